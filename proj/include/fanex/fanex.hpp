#pragma once

#include "fanex/bitset.hpp"
#include "fanex/canonical.hpp"
#include "fanex/extremal.hpp"
#include "fanex/fan_detect.hpp"
#include "fanex/graph.hpp"
#include "fanex/graph6.hpp"
#include "fanex/io.hpp"
#include "fanex/linalg.hpp"
#include "fanex/oracle.hpp"
#include "fanex/rational.hpp"
#include "fanex/spectral.hpp"
