#include "steelclust/mixture.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "steelclust/error.h"

namespace steelclust {

namespace {

constexpr double kLogTwoPi = 1.8378770664093453;

} // namespace

MixtureParams MixtureParams::layoutFor(const Dataset& d) {
    MixtureParams p;
    p.active_ = d.activeAttributes();
    p.kinds_.reserve(d.schema.size());
    p.domainSizes_.reserve(d.schema.size());
    for (const auto& spec : d.schema) {
        p.kinds_.push_back(spec.kind);
        p.domainSizes_.push_back(spec.domain.size());
    }
    const Ranges ranges = computeRanges(d);
    p.stdFloors_.assign(d.schema.size(), 1e-6);
    for (size_t a = 0; a < d.schema.size(); ++a) {
        const double span = ranges.span(a);
        if (span > 0.0) p.stdFloors_[a] = 1e-6 * span;
    }
    return p;
}

void MixtureParams::estimate(const Dataset& d, const std::vector<std::vector<double>>& weights) {
    const size_t k = weights.size();
    if (k == 0) throw Error("mixture needs at least one component");

    double totalMass = 0.0;
    std::vector<double> mass(k, 0.0);
    for (size_t c = 0; c < k; ++c) {
        if (weights[c].size() != d.n()) throw Error("weight row length mismatch");
        for (double w : weights[c]) mass[c] += w;
        if (mass[c] <= 0.0) throw Error("component " + std::to_string(c) + " has no mass");
        totalMass += mass[c];
    }

    components_.assign(k, Component{});
    for (size_t c = 0; c < k; ++c) {
        Component& comp = components_[c];
        comp.prior = mass[c] / totalMass;
        comp.means.assign(d.schema.size(), 0.0);
        comp.stds.assign(d.schema.size(), 0.0);
        comp.discrete.assign(d.schema.size(), {});
        for (int attr : active_) {
            const auto a = static_cast<size_t>(attr);
            if (kinds_[a] == AttributeKind::Numeric) {
                double sum = 0.0;
                for (size_t r = 0; r < d.n(); ++r) sum += weights[c][r] * d.numAt(r, a);
                const double mean = sum / mass[c];
                double varSum = 0.0;
                for (size_t r = 0; r < d.n(); ++r) {
                    const double diff = d.numAt(r, a) - mean;
                    varSum += weights[c][r] * diff * diff;
                }
                comp.means[a] = mean;
                comp.stds[a] = std::max(stdFloors_[a], std::sqrt(varSum / mass[c]));
            } else {
                std::vector<double> counts(domainSizes_[a], 1.0);
                for (size_t r = 0; r < d.n(); ++r) {
                    counts[static_cast<size_t>(d.rows[r][a].sym())] += weights[c][r];
                }
                const double denom = mass[c] + static_cast<double>(domainSizes_[a]);
                for (double& count : counts) count /= denom;
                comp.discrete[a] = std::move(counts);
            }
        }
    }
}

double MixtureParams::logDensity(size_t component, const Instance& x) const {
    const Component& comp = components_[component];
    double logSum = 0.0;
    for (int attr : active_) {
        const auto a = static_cast<size_t>(attr);
        if (kinds_[a] == AttributeKind::Numeric) {
            const double std = comp.stds[a];
            const double z = (x[a].num() - comp.means[a]) / std;
            logSum += -0.5 * (kLogTwoPi + z * z) - std::log(std);
        } else {
            logSum += std::log(comp.discrete[a][static_cast<size_t>(x[a].sym())]);
        }
    }
    return logSum;
}

double MixtureParams::logLikelihoodRow(const Instance& x) const {
    double maxTerm = -std::numeric_limits<double>::infinity();
    std::vector<double> terms(components_.size());
    for (size_t c = 0; c < components_.size(); ++c) {
        terms[c] = std::log(components_[c].prior) + logDensity(c, x);
        maxTerm = std::max(maxTerm, terms[c]);
    }
    double sum = 0.0;
    for (double t : terms) sum += std::exp(t - maxTerm);
    return maxTerm + std::log(sum);
}

std::vector<double> MixtureParams::membership(const Instance& x) const {
    std::vector<double> post(components_.size());
    double maxTerm = -std::numeric_limits<double>::infinity();
    for (size_t c = 0; c < components_.size(); ++c) {
        post[c] = std::log(components_[c].prior) + logDensity(c, x);
        maxTerm = std::max(maxTerm, post[c]);
    }
    double sum = 0.0;
    for (double& p : post) {
        p = std::exp(p - maxTerm);
        sum += p;
    }
    for (double& p : post) p /= sum;
    return post;
}

std::vector<std::vector<double>> hardWeights(const ClusterAssignment& assignment,
                                             size_t clusters) {
    std::vector<std::vector<double>> weights(
        clusters, std::vector<double>(assignment.labels.size(), 0.0));
    for (size_t r = 0; r < assignment.labels.size(); ++r) {
        const int label = assignment.labels[r];
        if (label >= 0) {
            if (static_cast<size_t>(label) >= clusters) {
                throw Error("assignment label exceeds cluster count");
            }
            weights[static_cast<size_t>(label)][r] = 1.0;
        }
    }
    return weights;
}

} // namespace steelclust
