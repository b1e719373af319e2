#pragma once

#include "crtrans/construct.hpp"
#include "crtrans/error.hpp"
#include "crtrans/gaussian_rational.hpp"
#include "crtrans/holo_map.hpp"
#include "crtrans/hypersurface.hpp"
#include "crtrans/linalg.hpp"
#include "crtrans/parser.hpp"
#include "crtrans/poly.hpp"
#include "crtrans/problem.hpp"
#include "crtrans/sampling.hpp"
#include "crtrans/transversality.hpp"
#include "crtrans/version.hpp"
