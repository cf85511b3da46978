#pragma once

#include "tubedist/trig.hpp"
#include "tubedist/geometry.hpp"
#include "tubedist/tube.hpp"
#include "tubedist/bounds.hpp"
#include "tubedist/sharpness.hpp"
#include "tubedist/rng.hpp"
