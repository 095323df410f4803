#pragma once

#include <algorithm>
#include <optional>
#include <queue>
#include <tuple>
#include <vector>

#include "itoric/config.hpp"
#include "itoric/toric/binomial.hpp"

namespace itoric {

namespace detail {

struct Mono {
  Exponents e;
  long deg = 0;
  std::uint64_t mask = 0;  // bit (i mod 64) set when x_i divides

  Mono() = default;
  explicit Mono(Exponents x) : e(std::move(x)) { refresh(); }
  void refresh() {
    deg = 0;
    mask = 0;
    for (std::size_t i = 0; i < e.size(); ++i) {
      deg += e[i];
      if (e[i]) mask |= std::uint64_t{1} << (i % 64);
    }
  }
  bool divides(const Mono& m) const {
    if (mask & ~m.mask) return false;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] > m.e[i]) return false;
    return true;
  }
};

inline Exponents lcm(const Exponents& a, const Exponents& b) {
  Exponents out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::max(a[i], b[i]);
  return out;
}

inline bool coprime(const Mono& a, const Mono& b) {
  if (!(a.mask & b.mask)) return true;
  for (std::size_t i = 0; i < a.e.size(); ++i)
    if (a.e[i] && b.e[i]) return false;
  return true;
}

// x^lead - x^trail with lead > trail in the active order.  The two terms may
// share factors; nothing is cancelled while saturating.
struct Poly {
  Mono lead, trail;
  bool active = true;
};

}  // namespace detail

// Buchberger's algorithm specialised to pure difference binomials.  S-pairs
// and reductions stay binomial, and the normal form of a monomial is again a
// monomial, so f = x^a - x^b lies in the ideal iff NF(x^a) == NF(x^b).
// Pairs are processed by increasing lcm degree (normal strategy) with the
// Gebauer-Moeller criteria.  For homogeneous input a degree cap yields a
// Groebner basis up to that degree.
class BinomialGroebner {
 public:
  BinomialGroebner(std::size_t nvars, MonomialOrder order, const Budgets& budgets = {})
      : nvars_(nvars), order_(std::move(order)), budgets_(budgets) {
    if (order_.significance.size() != nvars) throw DimensionMismatch("order size");
  }

  BinomialGroebner(const BinomialGroebner&) = delete;
  BinomialGroebner& operator=(const BinomialGroebner&) = delete;

  const MonomialOrder& order() const { return order_; }

  // Adds x^a - x^b as a generator.
  void add(const Exponents& a, const Exponents& b) {
    if (a.size() != nvars_ || b.size() != nvars_) throw DimensionMismatch("binomial length");
    insert(detail::Mono(a), detail::Mono(b));
  }
  void add(const Binomial& b) { add(b.plus, b.minus); }

  // Processes pairs up to the degree cap (all pairs when absent).
  void complete(std::optional<long> max_degree = std::nullopt) {
    while (!pairs_.empty()) {
      const Pair p = pairs_.top();
      if (max_degree && p.deg > *max_degree) break;
      pairs_.pop();
      if (++pairs_processed_ > budgets_.pair_queue)
        throw BudgetExceeded("S-pair budget of " + std::to_string(budgets_.pair_queue) + " exhausted");
      const auto& f = polys_[p.i];
      const auto& g = polys_[p.j];
      const Exponents l = detail::lcm(f.lead.e, g.lead.e);
      Exponents s1(nvars_), s2(nvars_);
      for (std::size_t v = 0; v < nvars_; ++v) {
        s1[v] = l[v] - f.lead.e[v] + f.trail.e[v];
        s2[v] = l[v] - g.lead.e[v] + g.trail.e[v];
      }
      insert(detail::Mono(std::move(s1)), detail::Mono(std::move(s2)));
    }
    completed_degree_ = pairs_.empty() ? std::nullopt : max_degree;
  }

  // Normal form of a monomial modulo the current basis.
  Exponents normal_form(Exponents m) const {
    detail::Mono mono(std::move(m));
    reduce(mono);
    return mono.e;
  }

  bool contains(const Exponents& a, const Exponents& b) const { return normal_form(a) == normal_form(b); }
  bool contains(const Binomial& b) const { return contains(b.plus, b.minus); }

  // Reduced Groebner basis (valid up to the completed degree), as binomials
  // with the plus part the leading term.  Common factors are kept.
  std::vector<std::pair<Exponents, Exponents>> reduced_terms() const {
    std::vector<const detail::Poly*> minimal;
    for (const auto& p : polys_) {
      if (!p.active) continue;
      bool redundant = false;
      for (const auto* q : minimal)
        if (q->lead.divides(p.lead)) {
          redundant = true;
          break;
        }
      if (!redundant) minimal.push_back(&p);
    }
    // Active leads are already pairwise non-divisible, except for equal leads.
    std::vector<std::pair<Exponents, Exponents>> out;
    for (const auto* p : minimal) out.emplace_back(p->lead.e, normal_form(p->trail.e));
    std::sort(out.begin(), out.end(), [&](const auto& x, const auto& y) {
      return order_.compare(x.first, y.first) < 0;
    });
    return out;
  }

  std::vector<Binomial> reduced_basis() const {
    std::vector<Binomial> out;
    for (const auto& [a, b] : reduced_terms()) out.push_back({nvars_, a, b});
    return out;
  }

  std::size_t active_size() const {
    return static_cast<std::size_t>(std::count_if(polys_.begin(), polys_.end(), [](const auto& p) { return p.active; }));
  }
  std::uint64_t pairs_processed() const { return pairs_processed_; }

 private:
  struct Pair {
    long deg;
    std::size_t i, j;
    Exponents lcm;
  };
  struct PairCmp {
    const MonomialOrder* order;
    bool operator()(const Pair& a, const Pair& b) const {
      if (a.deg != b.deg) return a.deg > b.deg;
      const int c = order->compare(a.lcm, b.lcm);
      if (c != 0) return c > 0;
      return std::tie(a.i, a.j) > std::tie(b.i, b.j);
    }
  };

  void reduce(detail::Mono& m) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& p : polys_) {
        if (!p.active || !p.lead.divides(m)) continue;
        for (std::size_t v = 0; v < nvars_; ++v) m.e[v] += p.trail.e[v] - p.lead.e[v];
        m.refresh();
        changed = true;
        break;
      }
    }
  }

  void insert(detail::Mono a, detail::Mono b) {
    reduce(a);
    reduce(b);
    const int c = order_.compare(a.e, b.e);
    if (c == 0) return;
    if (c < 0) std::swap(a, b);
    if (polys_.size() >= budgets_.basis_size)
      throw BudgetExceeded("Groebner basis size budget of " + std::to_string(budgets_.basis_size) + " exhausted");
    const std::size_t h = polys_.size();
    polys_.push_back({std::move(a), std::move(b), true});
    update(h);
  }

  // Gebauer-Moeller update for the new element h.
  void update(std::size_t h) {
    const detail::Mono& lh = polys_[h].lead;
    std::vector<std::size_t> cand;
    for (std::size_t g = 0; g < h; ++g)
      if (polys_[g].active) cand.push_back(g);
    std::vector<Exponents> lcms(cand.size());
    for (std::size_t idx = 0; idx < cand.size(); ++idx) lcms[idx] = detail::lcm(lh.e, polys_[cand[idx]].lead.e);

    // Criterion M/F on the new pairs: drop (h,g1) if another new pair has an
    // lcm properly dividing it, or an equal lcm and an earlier index.
    std::vector<bool> keep(cand.size(), true);
    auto divides = [](const Exponents& a, const Exponents& b) {
      for (std::size_t v = 0; v < a.size(); ++v)
        if (a[v] > b[v]) return false;
      return true;
    };
    for (std::size_t x = 0; x < cand.size(); ++x)
      for (std::size_t y = 0; y < cand.size() && keep[x]; ++y) {
        if (x == y || !keep[y]) continue;
        if (divides(lcms[y], lcms[x]) && (lcms[y] != lcms[x] || y < x)) keep[x] = false;
      }
    // Criterion B on old pairs: lead(h) | lcm(i,j) with both lcm(i,h) and
    // lcm(j,h) different from lcm(i,j).
    std::vector<Pair> old;
    while (!pairs_.empty()) {
      old.push_back(pairs_.top());
      pairs_.pop();
    }
    for (auto& p : old) {
      const bool drop = divides(lh.e, p.lcm) && detail::lcm(polys_[p.i].lead.e, lh.e) != p.lcm &&
                        detail::lcm(polys_[p.j].lead.e, lh.e) != p.lcm;
      if (!drop) pairs_.push(std::move(p));
    }
    for (std::size_t x = 0; x < cand.size(); ++x) {
      if (!keep[x]) continue;
      // Coprime leads: the S-pair reduces to zero (criterion 1).
      if (detail::coprime(lh, polys_[cand[x]].lead)) continue;
      long d = 0;
      for (int v : lcms[x]) d += v;
      pairs_.push({d, cand[x], h, std::move(lcms[x])});
    }
    for (std::size_t g = 0; g < h; ++g)
      if (polys_[g].active && lh.divides(polys_[g].lead)) polys_[g].active = false;
  }

  std::size_t nvars_;
  MonomialOrder order_;
  Budgets budgets_;
  std::vector<detail::Poly> polys_;
  std::priority_queue<Pair, std::vector<Pair>, PairCmp> pairs_{PairCmp{&order_}};
  std::uint64_t pairs_processed_ = 0;
  std::optional<long> completed_degree_;
};

// Reduced Groebner basis of the ideal generated by `gens`.
inline std::vector<Binomial> groebner_basis(const std::vector<Binomial>& gens, const MonomialOrder& order,
                                            const Budgets& budgets = {}) {
  if (gens.empty()) return {};
  BinomialGroebner gb(gens.front().var_count, order, budgets);
  for (const auto& g : gens) gb.add(g);
  gb.complete();
  return gb.reduced_basis();
}

}  // namespace itoric
