#include "engine.hpp"

namespace fqb::detail {

namespace {

// theta shape: weights 1, 2, ..., 2^{s-1}, r with 0 < r < 2^s (non-injective).
bool theta_shaped(const AffineExpansion& e, Int& top_gap) {
  const auto& w = e.weights;
  if (w.size() < 2) return false;
  Int expect = 1;
  for (std::size_t i = 0; i + 1 < w.size(); ++i, expect <<= 1)
    if (w[i].second != expect) return false;
  const Int& r = w.back().second;
  if (r <= 0 || r >= expect) return false;
  top_gap = expect - r;
  return true;
}

}  // namespace

std::vector<SparsePoly> canonical_rows(const BooleanSystem& sys) {
  std::vector<SparsePoly> rows;
  for (const auto& e : sys.symmetric()) {
    Int gap;
    if (!theta_shaped(e, gap)) continue;
    // Top bit only when the low bits already reach 2^s - r.
    SparsePoly row;
    for (std::size_t i = 0; i + 1 < e.weights.size(); ++i) row.add_term(Monomial::var(e.weights[i].first), e.weights[i].second);
    row.add_term(Monomial::var(e.weights.back().first), -gap);
    rows.push_back(std::move(row));
  }
  return rows;
}

bool fits_machine_words(const std::vector<SparsePoly>& eqs, const std::vector<SparsePoly>& ge) {
  const Int limit = Int(1) << 61;
  auto ok = [&](const SparsePoly& f) {
    Int s = 0;
    for (const auto& [m, c] : f.terms()) {
      s += abs(c);
      if (s > limit) return false;
    }
    return true;
  };
  for (const auto& f : eqs)
    if (!ok(f)) return false;
  for (const auto& f : ge)
    if (!ok(f)) return false;
  return true;
}

}  // namespace fqb::detail
