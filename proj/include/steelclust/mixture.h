#pragma once

#include <vector>

#include "steelclust/clustering.h"
#include "steelclust/dataset.h"

namespace steelclust {

// Per-component independent densities over the active attributes: a normal
// per numeric attribute and a smoothed discrete distribution per nominal
// attribute. Shared by the density wrapper and the EM mixture.
struct Component {
    double prior = 0.0;
    std::vector<double> means;                  // schema-aligned, numeric slots
    std::vector<double> stds;                   // schema-aligned, floored
    std::vector<std::vector<double>> discrete;  // schema-aligned, nominal slots
};

class MixtureParams {
public:
    // Layout captures which attributes participate and each numeric
    // attribute's std floor (1e-6 of its observed range; an absolute 1e-6
    // when the range is zero).
    static MixtureParams layoutFor(const Dataset& d);

    // Weighted parameter estimation: weights[c][row] >= 0. Priors are the
    // normalized weight masses; numeric stds are population ones with the
    // floor applied; discrete distributions use add-one smoothing. A
    // component with zero mass is an error.
    void estimate(const Dataset& d, const std::vector<std::vector<double>>& weights);

    double logDensity(size_t component, const Instance& x) const;

    // log(sum_c prior_c * density_c(x)) via log-sum-exp.
    double logLikelihoodRow(const Instance& x) const;

    // Posterior P(component | x); sums to 1.
    std::vector<double> membership(const Instance& x) const;

    size_t componentCount() const { return components_.size(); }
    const std::vector<Component>& components() const { return components_; }
    const std::vector<int>& activeAttributes() const { return active_; }

private:
    std::vector<Component> components_;
    std::vector<int> active_;
    std::vector<AttributeKind> kinds_;
    std::vector<double> stdFloors_;
    std::vector<size_t> domainSizes_;
};

// Hard assignment viewed as 0/1 weights, NOISE and UNDEFINED rows ignored.
std::vector<std::vector<double>> hardWeights(const ClusterAssignment& assignment,
                                             size_t clusters);

} // namespace steelclust
