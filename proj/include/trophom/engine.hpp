#pragma once

#include <array>
#include <map>
#include <random>

#include "trophom/block.hpp"
#include "trophom/epsilon.hpp"
#include "trophom/intlinalg.hpp"

namespace trophom {

struct TieWitness {
  size_t block_id = 0;
  size_t circuit_id = 0;
  std::vector<size_t> argmin;  // indices into the circuit's support
};

struct TropicalPoint {
  std::vector<Rational> w;
  std::vector<TieWitness> witnesses;        // ties of the first contributing cell
  std::vector<IntMatrix> cell_lattices;     // per block, kernel of its tie-difference rows
  Int multiplicity = 0;
  size_t cells = 1;  // transverse cell-tuples merged into this point
};

struct MixedCell {
  std::vector<std::array<ExpVec, 2>> pairs;  // per form, the two tied exponents
  std::vector<Rational> w;
  Int volume = 0;
};

struct EngineOptions {
  bool stable = false;  // infinitesimal offsets + limit merging (Def of stable intersection)
  uint64_t seed = 1;
  int max_retries = 5;
};

struct EngineResult {
  std::vector<TropicalPoint> points;
  bool complete = true;
  std::vector<std::string> warnings;
};

namespace detail {

// Incrementally row-reduced linear system over Q with Q[eps] right-hand sides.
struct TieSystem {
  struct Row {
    std::vector<Rational> c;
    EpsQ rhs;
    size_t pivot;
  };
  size_t n = 0;
  std::vector<Row> rows;

  explicit TieSystem(size_t vars) : n(vars) {}
  size_t rank() const { return rows.size(); }

  enum class Add { inconsistent, redundant, added };

  Add add(std::vector<Rational> c, EpsQ rhs) {
    for (const Row& r : rows) {
      Rational f = c[r.pivot];  // by value: c[r.pivot] is zeroed mid-loop
      if (f == 0) continue;
      for (size_t j = 0; j < n; ++j) c[j] -= f * r.c[j];
      rhs = rhs - f * r.rhs;
    }
    size_t p = 0;
    while (p < n && c[p] == 0) ++p;
    if (p == n) return rhs == EpsQ() ? Add::redundant : Add::inconsistent;
    Rational inv = c[p];
    for (size_t j = 0; j < n; ++j) c[j] /= inv;
    rhs = rhs.div(inv);
    for (Row& r : rows) {
      Rational f = r.c[p];
      if (f == 0) continue;
      for (size_t j = 0; j < n; ++j) r.c[j] -= f * c[j];
      r.rhs = r.rhs - f * rhs;
    }
    rows.push_back({std::move(c), std::move(rhs), p});
    return Add::added;
  }

  // valid once rank == n
  std::vector<EpsQ> solve() const {
    std::vector<EpsQ> w(n);
    for (const Row& r : rows) w[r.pivot] = r.rhs;
    return w;
  }
};

struct RetryEngine {};  // offsets hit a degeneracy; redraw

struct EpsVecLess {
  bool operator()(const std::vector<EpsQ>& x, const std::vector<EpsQ>& y) const {
    for (size_t i = 0; i < x.size(); ++i) {
      if (x[i] < y[i]) return true;
      if (y[i] < x[i]) return false;
    }
    return false;
  }
};

}  // namespace detail

// Zero-dimensional stable intersection of a list of blocks.  Candidate
// points are enumerated exhaustively from tie-pair tuples (one rank-raising
// pair per unit of codimension) with incremental pruning; each candidate is
// then certified against the full membership condition (every circuit of
// every block attains its minimum at least twice) and its multiplicity is
// the index of the lattice spanned by all tie differences.  In stable mode
// the whole computation runs over Q[eps] with generic per-block offsets and
// points are merged along eps -> 0.
inline EngineResult stable_intersection_points(const std::vector<Block>& blocks,
                                               size_t ambient,
                                               const EngineOptions& opts = {}) {
  size_t total_codim = 0;
  for (const auto& b : blocks) {
    if (b.ambient != ambient) fail("DimensionMismatch", "block ambient dimension mismatch");
    total_codim += b.rows();
  }
  if (total_codim != ambient)
    fail("DimensionMismatch", "block codimensions sum to " + std::to_string(total_codim) +
                                  ", ambient is " + std::to_string(ambient));

  EngineResult result;
  std::vector<CircuitEnumeration> circ(blocks.size());
  for (size_t b = 0; b < blocks.size(); ++b) {
    circ[b] = circuits(blocks[b], b);
    if (!circ[b].complete) {
      result.complete = false;
      result.warnings.push_back("circuit enumeration incomplete for block " + std::to_string(b) +
                                " (" + std::to_string(blocks[b].cols()) +
                                " columns); no points reported");
    }
  }
  if (!result.complete) return result;

  std::mt19937_64 rng(opts.seed * 0x9e3779b97f4a7c15ULL + 12345);
  auto draw_offsets = [&]() {
    std::vector<std::vector<Rational>> o(blocks.size(), std::vector<Rational>(ambient, Rational(0)));
    if (opts.stable) {
      std::uniform_int_distribution<long> d(1, 9973);
      for (size_t b = 1; b < blocks.size(); ++b)
        for (size_t i = 0; i < ambient; ++i) o[b][i] = Rational(d(rng));
    }
    return o;
  };

  struct Pair {
    size_t circuit, i, j;
  };
  std::vector<std::vector<Pair>> pools(blocks.size());
  for (size_t b = 0; b < blocks.size(); ++b)
    for (size_t c = 0; c < circ[b].circuits.size(); ++c) {
      size_t k = circ[b].circuits[c].form.terms.size();
      for (size_t i = 0; i < k; ++i)
        for (size_t j = i + 1; j < k; ++j) pools[b].push_back({c, i, j});
    }
  std::vector<size_t> order(blocks.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](size_t x, size_t y) { return pools[x].size() < pools[y].size(); });

  for (int attempt = 0;; ++attempt) {
    auto offsets = draw_offsets();
    try {
      std::set<std::vector<EpsQ>, detail::EpsVecLess> candidates;

      // DFS over blocks in `order`, choosing rank-raising tie pairs
      std::function<void(size_t, detail::TieSystem&)> walk = [&](size_t bi,
                                                                 detail::TieSystem& sys) {
        if (sys.rank() == ambient) {
          candidates.insert(sys.solve());
          return;
        }
        if (bi == order.size()) return;
        size_t b = order[bi];
        size_t need = blocks[b].rows();
        std::function<void(size_t, size_t, detail::TieSystem&)> pick =
            [&](size_t start, size_t got, detail::TieSystem& s) {
              if (got == need) {
                walk(bi + 1, s);
                return;
              }
              for (size_t pi = start; pi < pools[b].size(); ++pi) {
                const Pair& p = pools[b][pi];
                const auto& form = circ[b].circuits[p.circuit].form;
                ExpVec row = sub(form.terms[p.i].e, form.terms[p.j].e);
                std::vector<Rational> c(ambient);
                for (size_t k = 0; k < ambient; ++k) c[k] = Rational(row[k]);
                Rational rhs0 = form.terms[p.j].val - form.terms[p.i].val;
                Rational rhs1 = dot(row, offsets[b]);
                detail::TieSystem saved = s;
                auto res = s.add(std::move(c), EpsQ(rhs0, rhs1));
                if (res == detail::TieSystem::Add::added) {
                  pick(pi + 1, got + 1, s);
                  s = saved;
                } else if (res == detail::TieSystem::Add::inconsistent) {
                  s = saved;
                }
                // redundant pairs add no rank; skip them
              }
            };
        pick(0, 0, sys);
      };
      detail::TieSystem root(ambient);
      walk(0, root);

      // certify candidates and compute multiplicities
      struct Cell {
        std::vector<Rational> w0;
        std::vector<TieWitness> witnesses;
        std::vector<IntMatrix> lattices;
        Int mult;
      };
      std::vector<Cell> cells;
      for (const auto& w : candidates) {
        bool member = true;
        std::vector<TieWitness> wit;
        std::vector<std::vector<ExpVec>> rows_per_block(blocks.size());
        for (size_t b = 0; b < blocks.size() && member; ++b) {
          for (size_t c = 0; c < circ[b].circuits.size() && member; ++c) {
            const auto& form = circ[b].circuits[c].form;
            EpsQ best;
            std::vector<size_t> argmin;
            for (size_t k = 0; k < form.terms.size(); ++k) {
              EpsQ v = EpsQ(form.terms[k].val, -dot(form.terms[k].e, offsets[b])) +
                       dot_eps(form.terms[k].e, w);
              if (argmin.empty() || v < best) {
                best = v;
                argmin = {k};
              } else if (v == best) {
                argmin.push_back(k);
              }
            }
            if (argmin.size() < 2) {
              member = false;
              break;
            }
            std::vector<ExpVec> diffs;
            for (size_t k = 1; k < argmin.size(); ++k)
              diffs.push_back(sub(form.terms[argmin[k]].e, form.terms[argmin[0]].e));
            // Collinear tie sets are dual to a Newton edge: only the extreme
            // endpoints carry the lattice length (interior support points
            // must not shrink the row lattice).
            if (diffs.size() > 1 && int_rank(IntMatrix::from_rows(diffs)) == 1) {
              ExpVec dir = diffs[0];
              Int g = 0;
              for (auto v : dir) g = boost::multiprecision::gcd(g, Int(v < 0 ? -v : v));
              long gg = g.convert_to<long>();
              for (auto& v : dir) v /= gg;
              size_t ax = 0;
              while (dir[ax] == 0) ++ax;
              int64_t lo = 0, hi = 0;
              for (const auto& d : diffs) {
                int64_t p = d[ax] / dir[ax];
                lo = std::min(lo, p);
                hi = std::max(hi, p);
              }
              ExpVec edge(ambient);
              for (size_t k = 0; k < ambient; ++k) edge[k] = dir[k] * (hi - lo);
              diffs = {edge};
            }
            for (auto& d : diffs) rows_per_block[b].push_back(std::move(d));
            wit.push_back({b, c, argmin});
          }
        }
        if (!member) continue;

        std::vector<ExpVec> all_rows;
        std::vector<IntMatrix> lattices;
        bool clean = true;
        for (size_t b = 0; b < blocks.size(); ++b) {
          IntMatrix tb = IntMatrix::from_rows(rows_per_block[b]);
          tb.cols = ambient;  // guard empty row lists
          if (tb.rows == 0) tb.a.clear();
          size_t rank = int_rank(tb);
          if (rank != blocks[b].rows()) {
            clean = false;
            break;
          }
          lattices.push_back(integer_kernel(tb));
          for (const auto& r : rows_per_block[b]) all_rows.push_back(r);
        }
        if (!clean) {
          if (!opts.stable) fail("NonGenericValuation",
                                 "tie structure of a block is not a maximal cell; redraw v");
          throw detail::RetryEngine{};
        }
        // generators as columns of an ambient x k matrix
        IntMatrix gen(ambient, all_rows.size());
        for (size_t c = 0; c < all_rows.size(); ++c)
          for (size_t i = 0; i < ambient; ++i) gen(i, c) = all_rows[c][i];
        LatticeIndex idx = lattice_index(gen);
        if (!idx.finite) {
          if (!opts.stable) fail("NonGenericValuation", "infinite tie-lattice index; redraw v");
          throw detail::RetryEngine{};
        }
        std::vector<Rational> w0(ambient);
        for (size_t i = 0; i < ambient; ++i) w0[i] = w[i].a;
        cells.push_back({std::move(w0), std::move(wit), std::move(lattices), idx.value});
      }

      // merge cells by their eps -> 0 limit
      std::map<std::vector<Rational>, TropicalPoint> merged;
      for (auto& c : cells) {
        auto it = merged.find(c.w0);
        if (it == merged.end()) {
          TropicalPoint p;
          p.w = c.w0;
          p.witnesses = std::move(c.witnesses);
          p.cell_lattices = std::move(c.lattices);
          p.multiplicity = c.mult;
          merged.emplace(p.w, std::move(p));
        } else {
          it->second.multiplicity += c.mult;
          it->second.cells += 1;
        }
      }
      for (auto& [w0, p] : merged) result.points.push_back(std::move(p));
      return result;
    } catch (detail::RetryEngine&) {
      if (attempt + 1 >= opts.max_retries)
        fail("PerturbationFailure", "engine offsets kept hitting degeneracies");
      result.points.clear();
    }
  }
}

// Hypersurface special case: one block per form, cells grouped by point.
inline std::vector<MixedCell> mixed_cells(const std::vector<TropicalForm>& forms,
                                          size_t ambient) {
  std::vector<Block> blocks;
  for (const auto& F : forms) {
    LaurentPoly p(ambient);
    for (const auto& t : F.terms)
      p.add_term(t.e, PuiseuxScalar::monomial(t.val, GaussianRational(1)));
    blocks.push_back(Block::from_poly(p));
  }
  EngineOptions opts;  // strict: ties beyond pairs are rejected
  EngineResult res = stable_intersection_points(blocks, ambient, opts);
  std::vector<MixedCell> cells;
  for (const auto& pt : res.points) {
    MixedCell c;
    c.w = pt.w;
    c.volume = pt.multiplicity;
    c.pairs.resize(forms.size());
    for (const auto& wit : pt.witnesses) {
      if (wit.argmin.size() != 2)
        fail("NonGenericValuation", "mixed cell with more than two tied terms");
      // circuit of a 1-row block is the row itself: support order == column order
      c.pairs[wit.block_id] = {blocks[wit.block_id].monomials[wit.argmin[0]],
                               blocks[wit.block_id].monomials[wit.argmin[1]]};
    }
    cells.push_back(std::move(c));
  }
  return cells;
}

// Sum of mixed-cell volumes under an internal generic lift; the lift is
// redrawn (bounded) when it produces a degenerate subdivision.
inline Int mixed_volume(const std::vector<TropicalForm>& forms, size_t ambient,
                        uint64_t seed = 1, int max_retries = 8) {
  std::mt19937_64 rng(seed * 0x2545f4914f6cdd1dULL + 99991);
  std::uniform_int_distribution<long> lift(0, 1 << 20);
  for (int attempt = 0; attempt < max_retries; ++attempt) {
    std::vector<TropicalForm> lifted = forms;
    for (auto& F : lifted)
      for (auto& t : F.terms) t.val = Rational(lift(rng));
    try {
      Int total = 0;
      for (const auto& c : mixed_cells(lifted, ambient)) total += c.volume;
      return total;
    } catch (const Error& e) {
      if (e.kind != "NonGenericValuation") throw;
    }
  }
  fail("PerturbationFailure", "mixed volume lifts kept degenerating");
}

}  // namespace trophom
