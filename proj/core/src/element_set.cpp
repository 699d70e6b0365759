#include "approxlab/element_set.hpp"

#include <stdexcept>

namespace approxlab {

ElementSet::ElementSet(GroupPtr g, const std::vector<int>& indices)
    : group_(std::move(g)), bits_(group_->order()) {
  for (int i : indices) {
    if (i < 0 || i >= group_->order())
      throw std::invalid_argument("element index out of range");
    bits_.set(static_cast<std::size_t>(i));
  }
}

ElementSet ElementSet::singleton_identity(GroupPtr g) {
  ElementSet s(std::move(g));
  s.add(s.group_->identity());
  return s;
}

ElementSet ElementSet::whole_group(GroupPtr g) {
  ElementSet s(std::move(g));
  for (int i = 0; i < s.group_->order(); ++i) s.bits_.set(static_cast<std::size_t>(i));
  return s;
}

void ElementSet::require_same_group(const ElementSet& o) const {
  if (group_.get() != o.group_.get())
    throw std::invalid_argument("operation mixes sets from different groups");
}

bool ElementSet::operator==(const ElementSet& o) const {
  return group_.get() == o.group_.get() && bits_ == o.bits_;
}

bool ElementSet::subset_of(const ElementSet& o) const {
  require_same_group(o);
  return bits_.subset_of(o.bits_);
}

bool ElementSet::intersects(const ElementSet& o) const {
  require_same_group(o);
  return bits_.intersects(o.bits_);
}

ElementSet ElementSet::set_union(const ElementSet& o) const {
  require_same_group(o);
  return ElementSet(group_, bits_ | o.bits_);
}

ElementSet ElementSet::set_intersect(const ElementSet& o) const {
  require_same_group(o);
  return ElementSet(group_, bits_ & o.bits_);
}

ElementSet ElementSet::set_difference(const ElementSet& o) const {
  require_same_group(o);
  return ElementSet(group_, bits_ - o.bits_);
}

ElementSet ElementSet::product(const ElementSet& o) const {
  require_same_group(o);
  const auto& g = *group_;
  ElementSet out(group_);
  const std::vector<int> rhs = o.indices();
  bits_.for_each([&](std::size_t a) {
    for (int b : rhs) out.bits_.set(static_cast<std::size_t>(g.mul(static_cast<int>(a), b)));
  });
  return out;
}

ElementSet ElementSet::inverse() const {
  const auto& g = *group_;
  ElementSet out(group_);
  bits_.for_each([&](std::size_t a) {
    out.bits_.set(static_cast<std::size_t>(g.inverse(static_cast<int>(a))));
  });
  return out;
}

ElementSet ElementSet::power(int n) const {
  if (n < 0) return inverse().power(-n);
  ElementSet acc = singleton_identity(group_);
  for (int i = 0; i < n; ++i) acc = acc.product(*this);
  return acc;
}

ElementSet ElementSet::left_translate(int g) const {
  const auto& grp = *group_;
  ElementSet out(group_);
  bits_.for_each([&](std::size_t a) {
    out.bits_.set(static_cast<std::size_t>(grp.mul(g, static_cast<int>(a))));
  });
  return out;
}

ElementSet ElementSet::right_translate(int g) const {
  const auto& grp = *group_;
  ElementSet out(group_);
  bits_.for_each([&](std::size_t a) {
    out.bits_.set(static_cast<std::size_t>(grp.mul(static_cast<int>(a), g)));
  });
  return out;
}

ElementSet ElementSet::thicken(const Rat& r) const {
  ElementSet ball(group_, group_->identity_ball(r));
  return product(ball);
}

ElementSet ElementSet::conjugation_set(const ElementSet& o) const {
  require_same_group(o);
  const auto& g = *group_;
  ElementSet out(group_);
  const std::vector<int> conjugators = o.indices();
  bits_.for_each([&](std::size_t a) {
    for (int b : conjugators) {
      int v = g.mul(g.mul(g.inverse(b), static_cast<int>(a)), b);
      out.bits_.set(static_cast<std::size_t>(v));
    }
  });
  return out;
}

ElementSet ElementSet::commutator_set(const ElementSet& o) const {
  require_same_group(o);
  const auto& g = *group_;
  ElementSet out(group_);
  const std::vector<int> rhs = o.indices();
  bits_.for_each([&](std::size_t ai) {
    int a = static_cast<int>(ai);
    for (int b : rhs) {
      int v = g.mul(g.mul(g.inverse(a), g.inverse(b)), g.mul(a, b));
      out.bits_.set(static_cast<std::size_t>(v));
    }
  });
  return out;
}

bool ElementSet::is_symmetric() const { return *this == inverse(); }

LipschitzResult lipschitz_constant(const ElementSet& X, const Rat& r) {
  if (X.empty()) throw std::invalid_argument("empty set has no Lipschitz data");
  const auto& g = *X.group();
  const std::vector<int> ball = ElementSet(X.group(), g.identity_ball(r)).indices();
  LipschitzResult res;
  res.l = Rat(0);
  if (ball.size() < 2) return res;  // no pair to constrain; l = 0 by convention

  const long long* phi = g.phi_data();
  // Track the max of phi((a·x)^-1·(b·x)) / phi(a^-1·b) as an exact fraction;
  // the common group denominator cancels.
  long long best_num = 0, best_den = 1;
  for (int x : X.indices()) {
    for (std::size_t i = 0; i < ball.size(); ++i) {
      const int a = ball[i];
      const int ax = g.mul(a, x);
      const int* inv_ax_row = g.mult_row(g.inverse(ax));
      const int* inv_a_row = g.mult_row(g.inverse(a));
      for (std::size_t j = i + 1; j < ball.size(); ++j) {
        const int b = ball[j];
        const long long num = phi[inv_ax_row[g.mul(b, x)]];
        const long long den = phi[inv_a_row[b]];
        if (static_cast<__int128>(num) * best_den > static_cast<__int128>(best_num) * den) {
          best_num = num;
          best_den = den;
          res.x = x;
          res.a = a;
          res.b = b;
        }
      }
    }
  }
  res.l = make_rat(best_num, best_den);
  return res;
}

}  // namespace approxlab
