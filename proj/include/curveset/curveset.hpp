#ifndef CURVESET_CURVESET_HPP
#define CURVESET_CURVESET_HPP

#include "curveset/geometry.hpp"
#include "curveset/metrics.hpp"
#include "curveset/clustering.hpp"
#include "curveset/sensitivity.hpp"
#include "curveset/coreset.hpp"
#include "curveset/evaluation.hpp"
#include "curveset/io.hpp"

#endif  // CURVESET_CURVESET_HPP
