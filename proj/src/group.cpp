#include "urn/group.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

#include "urn/error.hpp"

namespace urn {

namespace {

std::string tuple_str(std::initializer_list<Index> xs) {
  std::string out = "(";
  bool first = true;
  for (Index x : xs) {
    if (!first) out += ", ";
    out += std::to_string(x);
    first = false;
  }
  return out + ")";
}

CayleyData table_from(const std::vector<std::string>& labels, auto&& product) {
  const auto n = labels.size();
  CayleyData raw{labels, std::vector<std::vector<int>>(n, std::vector<int>(n))};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) raw.table[i][j] = static_cast<int>(product(i, j));
  return raw;
}

}  // namespace

std::optional<Index> FiniteGroup::find(std::string_view label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<Index>(it - labels_.begin());
}

bool FiniteGroup::is_abelian() const { return table_ == table_.transpose(); }

Index FiniteGroup::element_order(Index a) const {
  Index m = 1;
  for (Index x = a; x != identity_; x = multiply(x, a)) ++m;
  return m;
}

FiniteGroup validate_group(CayleyData raw) {
  const auto n = raw.elements.size();
  if (n == 0) throw Error(Errc::InvalidTable, "group has no elements");
  if (raw.table.size() != n)
    throw Error(Errc::InvalidTable, "table has " + std::to_string(raw.table.size()) +
                                        " rows, expected " + std::to_string(n));
  {
    std::set<std::string> seen;
    for (const auto& l : raw.elements)
      if (!seen.insert(l).second) throw Error(Errc::InvalidTable, "duplicate label '" + l + "'");
  }

  const auto N = static_cast<Index>(n);
  Eigen::MatrixXi t(N, N);
  for (Index i = 0; i < N; ++i) {
    const auto& row = raw.table[static_cast<std::size_t>(i)];
    if (row.size() != n)
      throw Error(Errc::InvalidTable, "row " + std::to_string(i) + " has " +
                                          std::to_string(row.size()) + " entries");
    for (Index j = 0; j < N; ++j) {
      const int v = row[static_cast<std::size_t>(j)];
      if (v < 0 || v >= static_cast<int>(n))
        throw Error(Errc::InvalidTable, "entry " + tuple_str({i, j}) + " out of range");
      t(i, j) = v;
    }
  }

  std::vector<Index> last(n);
  for (Index i = 0; i < N; ++i) {
    std::fill(last.begin(), last.end(), -1);
    for (Index j = 0; j < N; ++j) {
      auto& prev = last[static_cast<std::size_t>(t(i, j))];
      if (prev >= 0)
        throw Error(Errc::NotLatinSquare, "row " + std::to_string(i) + " repeats element " +
                                              std::to_string(t(i, j)) + " at columns " +
                                              tuple_str({prev, j}));
      prev = j;
    }
  }
  for (Index j = 0; j < N; ++j) {
    std::fill(last.begin(), last.end(), -1);
    for (Index i = 0; i < N; ++i) {
      auto& prev = last[static_cast<std::size_t>(t(i, j))];
      if (prev >= 0)
        throw Error(Errc::NotLatinSquare, "column " + std::to_string(j) + " repeats element " +
                                              std::to_string(t(i, j)) + " at rows " +
                                              tuple_str({prev, i}));
      prev = i;
    }
  }

  std::optional<Index> identity;
  for (Index e = 0; e < N && !identity; ++e) {
    bool ok = true;
    for (Index i = 0; i < N && ok; ++i) ok = t(e, i) == i && t(i, e) == i;
    if (ok) identity = e;
  }
  if (!identity) throw Error(Errc::NoIdentity, "no element acts as a two-sided identity");

  for (Index i = 0; i < N; ++i)
    for (Index j = 0; j < N; ++j)
      for (Index k = 0; k < N; ++k)
        if (t(t(i, j), k) != t(i, t(j, k)))
          throw Error(Errc::NotAssociative, "triple " + tuple_str({i, j, k}));

  std::vector<Index> inverse(n, -1);
  for (Index i = 0; i < N; ++i) {
    for (Index j = 0; j < N; ++j)
      if (t(i, j) == *identity && t(j, i) == *identity) {
        inverse[static_cast<std::size_t>(i)] = j;
        break;
      }
    if (inverse[static_cast<std::size_t>(i)] < 0)
      throw Error(Errc::NoInverse, "element " + std::to_string(i));
  }

  FiniteGroup g;
  g.table_ = std::move(t);
  g.labels_ = std::move(raw.elements);
  g.inverse_ = std::move(inverse);
  g.identity_ = *identity;
  return g;
}

FiniteGroup cyclic_group(int n) {
  if (n < 1) throw Error(Errc::InvalidArgument, "cyclic group needs n >= 1");
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  auto g = validate_group(table_from(labels, [n](auto i, auto j) { return (i + j) % n; }));
  g.set_name("Z" + std::to_string(n));
  return g;
}

FiniteGroup dihedral_group(int n) {
  if (n < 3) throw Error(Errc::InvalidArgument, "dihedral group needs n >= 3");
  const auto un = static_cast<std::size_t>(n);
  std::vector<std::string> labels;
  for (int f = 0; f < 2; ++f)
    for (int i = 0; i < n; ++i) labels.push_back((f ? "s" : "r") + std::to_string(i));
  // r^i s^f * r^j s^g = r^(i + (-1)^f j) s^(f+g)
  auto product = [un](std::size_t a, std::size_t b) {
    const std::size_t i = a % un, f = a / un, j = b % un, g = b / un;
    const std::size_t rot = f ? (i + un - j) % un : (i + j) % un;
    return rot + un * ((f + g) % 2);
  };
  auto g = validate_group(table_from(labels, product));
  g.set_name("D" + std::to_string(n));
  return g;
}

FiniteGroup symmetric_group(int n, std::size_t size_cap) {
  if (n < 1) throw Error(Errc::InvalidArgument, "symmetric group needs n >= 1");
  std::size_t fact = 1;
  for (int i = 2; i <= n; ++i) {
    fact *= static_cast<std::size_t>(i);
    if (fact > size_cap)
      throw Error(Errc::SizeCapExceeded, "S" + std::to_string(n) + " exceeds cap " +
                                             std::to_string(size_cap));
  }

  std::vector<std::vector<int>> perms;
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 1);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));

  std::map<std::vector<int>, std::size_t> index;
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < perms.size(); ++k) {
    index[perms[k]] = k;
    std::string l;
    for (std::size_t x = 0; x < perms[k].size(); ++x) {
      if (n > 9 && x > 0) l += ',';
      l += std::to_string(perms[k][x]);
    }
    labels.push_back(std::move(l));
  }
  auto product = [&](std::size_t a, std::size_t b) {
    std::vector<int> c(static_cast<std::size_t>(n));
    for (std::size_t x = 0; x < c.size(); ++x)
      c[x] = perms[a][static_cast<std::size_t>(perms[b][x] - 1)];
    return index.at(c);
  };
  auto g = validate_group(table_from(labels, product));
  g.set_name("S" + std::to_string(n));
  return g;
}

FiniteGroup direct_product(const FiniteGroup& left, const FiniteGroup& right) {
  const auto m = static_cast<std::size_t>(right.order());
  std::vector<std::string> labels;
  for (const auto& a : left.labels())
    for (const auto& b : right.labels()) labels.push_back("(" + a + "," + b + ")");
  auto product = [&](std::size_t x, std::size_t y) {
    const auto a = left.multiply(static_cast<Index>(x / m), static_cast<Index>(y / m));
    const auto b = right.multiply(static_cast<Index>(x % m), static_cast<Index>(y % m));
    return static_cast<std::size_t>(a) * m + static_cast<std::size_t>(b);
  };
  auto g = validate_group(table_from(labels, product));
  g.set_name(left.name() + "x" + right.name());
  return g;
}

Subgroup::Subgroup(Mask members)
    : mask_(std::move(members)),
      order_(static_cast<Index>(std::count(mask_.begin(), mask_.end(), true))) {}

std::vector<Index> Subgroup::members() const {
  std::vector<Index> out;
  for (std::size_t i = 0; i < mask_.size(); ++i)
    if (mask_[i]) out.push_back(static_cast<Index>(i));
  return out;
}

bool is_closed_subset(const FiniteGroup& group, const Mask& mask) {
  const Index n = group.order();
  if (static_cast<Index>(mask.size()) != n) return false;
  if (std::none_of(mask.begin(), mask.end(), [](bool b) { return b; })) return false;
  for (Index i = 0; i < n; ++i) {
    if (!mask[static_cast<std::size_t>(i)]) continue;
    for (Index j = 0; j < n; ++j)
      if (mask[static_cast<std::size_t>(j)] &&
          !mask[static_cast<std::size_t>(group.multiply(i, j))])
        return false;
  }
  return true;
}

Subgroup closure(const FiniteGroup& group, std::span<const Index> seeds) {
  if (seeds.empty()) throw Error(Errc::InvalidArgument, "closure needs at least one seed");
  const Index n = group.order();
  for (Index s : seeds)
    if (s < 0 || s >= n) throw Error(Errc::InvalidArgument, "seed out of range");

  // In a finite group the monoid generated by the seeds is already a subgroup.
  Mask mask(static_cast<std::size_t>(n), false);
  std::deque<Index> frontier{group.identity()};
  mask[static_cast<std::size_t>(group.identity())] = true;
  while (!frontier.empty()) {
    const Index x = frontier.front();
    frontier.pop_front();
    for (Index s : seeds) {
      const Index y = group.multiply(x, s);
      if (!mask[static_cast<std::size_t>(y)]) {
        mask[static_cast<std::size_t>(y)] = true;
        frontier.push_back(y);
      }
    }
  }
  return Subgroup(std::move(mask));
}

std::vector<Subgroup> enumerate_subgroups(const FiniteGroup& group, std::size_t size_cap) {
  if (static_cast<std::size_t>(group.order()) > size_cap)
    throw Error(Errc::SizeCapExceeded, "|G| = " + std::to_string(group.order()) +
                                           " exceeds subgroup enumeration cap " +
                                           std::to_string(size_cap));
  std::set<Mask> found;
  std::vector<Mask> pending;
  for (Index g = 0; g < group.order(); ++g) {
    const Index seed[] = {g};
    auto h = closure(group, seed);
    if (found.insert(h.mask()).second) pending.push_back(h.mask());
  }

  // Join each newly found subgroup with everything known until the set is stable.
  while (!pending.empty()) {
    std::vector<Mask> next;
    const std::vector<Mask> known(found.begin(), found.end());
    for (const auto& a : pending) {
      for (const auto& b : known) {
        std::vector<Index> seeds;
        for (std::size_t i = 0; i < a.size(); ++i)
          if (a[i] || b[i]) seeds.push_back(static_cast<Index>(i));
        auto h = closure(group, seeds);
        if (found.insert(h.mask()).second) next.push_back(h.mask());
      }
    }
    pending = std::move(next);
  }

  std::vector<Subgroup> out;
  for (const auto& m : found) out.emplace_back(m);
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.members() < b.members();
  });
  return out;
}

}  // namespace urn
