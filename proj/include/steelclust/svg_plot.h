#pragma once

#include <string>

#include "steelclust/clustering.h"
#include "steelclust/dataset.h"

namespace steelclust {

// Self-contained 800x600 scatter plot. Markers are drawn in row order and
// colored by cluster label; NOISE and UNDEFINED get reserved grays and their
// own legend entries. Nominal axes position instances by domain index. An
// empty assignment draws unclustered markers with no legend; an empty
// dataset draws axes only. Output is a pure function of the arguments.
std::string scatterSvg(const Dataset& d, int xAttr, int yAttr,
                       const ClusterAssignment& assignment);

} // namespace steelclust
