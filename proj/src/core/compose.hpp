#pragma once

#include <Eigen/Dense>

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "core/matrix.hpp"

namespace latq {

class Lattice;

// Per-component data for the closed-form product formulas. At least one of
// e (mean square error) and g (NSM) must be present; when both are given they
// must satisfy g = e/(n V^(2/n)).
struct ComponentMoments {
  int n = 0;
  double volume = 0;
  std::optional<double> e;
  std::optional<double> g;
};

// NSM of Lambda_1 x a*Lambda_2 as a function of the relative scale.
double g_of_scale(int n1, double v1, double g1, int n2, double v2, double g2, double a);

// The unique interior minimizer of g_of_scale; evaluates both the G-form and
// the E-form and insists they agree to 1e-9 relative.
double optimal_scale(const ComponentMoments& c1, const ComponentMoments& c2);

// prod G_i^(n_i/n) over the (dimension, NSM) parts; order-invariant.
double optimal_product_nsm(const std::vector<std::pair<int, double>>& parts);

// Block-diagonal assembly, each block multiplied by its scale.
GeneratorMatrix product_generator(const std::vector<std::pair<const GeneratorMatrix*, double>>& parts);

// [[B1, 0], [h, a]]: stacks shifted copies of the base lattice at spacing a.
GeneratorMatrix laminate_generator(const GeneratorMatrix& b1, const Eigen::RowVectorXd& h, double a);

// G_1^(1-1/n) / 12^(1/n), the optimal-separation lamination bound.
double lamination_bound(double g1, int n);

struct ProductPart {
  std::shared_ptr<const Lattice> lattice;
  std::optional<double> explicit_scale;  // relative to the first part; optimal when absent
};

struct ProductPlan {
  struct Part {
    std::string name;
    int n = 0;
    double volume = 0;  // of the unscaled component
    double g = 0;
    double e = 0;
    double scale = 1;
  };
  std::vector<Part> parts;
  int total_dim = 0;
  double volume = 0;       // of the assembled generator
  double predicted_g = 0;
  double predicted_e_per_dim = 0;
};

// Folds parts left to right, scaling each new part against the aggregate.
// Component NSMs come from the catalog golden constants.
ProductPlan plan_product(const std::vector<ProductPart>& parts);

// Grammar: NAME('*'NAME)*, each NAME optionally suffixed '@scale'. A '*' that
// ends a segment belongs to the name (dual lattices), so "A3**Z" is A3* x Z.
std::vector<ProductPart> parse_product_spec(const std::string& spec);

GeneratorMatrix plan_generator(const std::vector<ProductPart>& parts);

}  // namespace latq
