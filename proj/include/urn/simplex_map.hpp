#pragma once

#include <functional>
#include <memory>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "urn/distribution.hpp"
#include "urn/error.hpp"
#include "urn/group.hpp"
#include "urn/types.hpp"

namespace urn {

enum class MapKind { Convolution, Parity, Genotype, Custom };

std::string_view to_string(MapKind kind);

struct MapDescriptor {
  MapKind kind = MapKind::Convolution;
  std::string group;  // convolution only
  int parity_k = 0;   // parity only
  double s = 0.0;     // genotype only
  double t = 0.0;

  std::string to_string() const;
};

/// Label law of a product of two independent draws: (T p)_g = sum_h p_{g h^-1} p_h.
class ConvolutionMap {
 public:
  explicit ConvolutionMap(std::shared_ptr<const FiniteGroup> group);

  template <typename Scalar>
  Vector<Scalar> apply(const Vector<Scalar>& p) const {
    const Index n = group_->order();
    Vector<Scalar> out(n);
    for (Index g = 0; g < n; ++g) {
      Scalar acc(0);
      for (Index h = 0; h < n; ++h) acc += p[quotient_(g, h)] * p[h];
      out[g] = acc;
    }
    return out;
  }

  const FiniteGroup& group() const { return *group_; }
  const std::shared_ptr<const FiniteGroup>& group_ptr() const { return group_; }
  Index dimension() const { return group_->order(); }

 private:
  std::shared_ptr<const FiniteGroup> group_;
  Eigen::MatrixXi quotient_;  // quotient_(g, h) = g * h^-1
};

/// Parity of k draws on {0, 1}: p1 -> [1 - (1 - 2 p1)^k] / 2.
class ParityMap {
 public:
  explicit ParityMap(int k);

  template <typename Scalar>
  Vector<Scalar> apply(const Vector<Scalar>& p) const {
    if (p.size() != 2) throw Error(Errc::NonBinaryStateSpace, "parity map needs 2 labels");
    // 1 - 2 p1 written as p0 - p1 keeps the two coordinates symmetric.
    const Scalar d = p[0] - p[1];
    Scalar dk(1);
    for (int i = 0; i < k_; ++i) dk *= d;
    Vector<Scalar> out(2);
    out[1] = (Scalar(1) - dk) / Scalar(2);
    out[0] = (Scalar(1) + dk) / Scalar(2);
    return out;
  }

  int k() const { return k_; }

 private:
  int k_;
};

/// Random mating with genotype fitness AA : Aa : aa = 1-s : 1 : 1-t.
/// Coordinate 0 is allele A, coordinate 1 is allele a.
class GenotypeMap {
 public:
  GenotypeMap(double s, double t);

  template <typename Scalar>
  Vector<Scalar> apply(const Vector<Scalar>& p) const {
    if (p.size() != 2) throw Error(Errc::NonBinaryStateSpace, "genotype map needs 2 labels");
    // p(1 - ps) / [1 - p^2 s - (1-p)^2 t]; on the simplex the denominator equals
    // the sum of the two numerators below.
    const Scalar num_a_major = p[0] * (Scalar(1) - p[0] * Scalar(s_));
    const Scalar num_a_minor = p[1] * (Scalar(1) - p[1] * Scalar(t_));
    const Scalar denom = num_a_major + num_a_minor;
    if (!(denom > Scalar(0)))
      throw Error(Errc::InvalidDistribution, "genotype denominator is not positive");
    Vector<Scalar> out(2);
    out[0] = num_a_major / denom;
    out[1] = num_a_minor / denom;
    return out;
  }

  double s() const { return s_; }
  double t() const { return t_; }

 private:
  double s_;
  double t_;
};

/// A caller-supplied transformation. Floating point only.
class CustomMap {
 public:
  using Function = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

  CustomMap(Function fn, std::vector<std::string> labels, std::string name);

  Eigen::VectorXd operator()(const Eigen::VectorXd& p) const { return fn_(p); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& name() const { return name_; }

 private:
  Function fn_;
  std::vector<std::string> labels_;
  std::string name_;
};

/// T : G* -> G*. Immutable value type; apply() is pure and reentrant.
class SimplexMap {
 public:
  using Impl = std::variant<ConvolutionMap, ParityMap, GenotypeMap, CustomMap>;

  explicit SimplexMap(Impl impl) : impl_(std::move(impl)) {}

  template <typename Scalar>
  Vector<Scalar> apply(const Vector<Scalar>& p) const {
    return std::visit(
        [&](const auto& m) -> Vector<Scalar> {
          using M = std::decay_t<decltype(m)>;
          if constexpr (std::is_same_v<M, CustomMap>) {
            if constexpr (std::is_same_v<Scalar, double>)
              return m(p);
            else
              throw Error(Errc::Unsupported, "custom maps only support floating point");
          } else {
            return m.template apply<Scalar>(p);
          }
        },
        impl_);
  }

  Distribution apply(const Distribution& p) const;

  MapKind kind() const;
  MapDescriptor descriptor() const;
  /// Labels of the state space the map acts on.
  std::vector<std::string> labels() const;
  Index dimension() const;

  const Impl& impl() const { return impl_; }
  template <typename M>
  const M* as() const { return std::get_if<M>(&impl_); }

 private:
  Impl impl_;
};

SimplexMap convolution_map(std::shared_ptr<const FiniteGroup> group);
SimplexMap convolution_map(const FiniteGroup& group);
/// Throws InvalidArgument for k < 1.
SimplexMap parity_map(int k);
/// Throws InvalidFitness unless s < 1 and t < 1.
SimplexMap genotype_map(double s, double t);
SimplexMap custom_map(CustomMap::Function fn, std::vector<std::string> labels, std::string name);

}  // namespace urn
