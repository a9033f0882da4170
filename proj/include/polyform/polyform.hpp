#pragma once

#include "polyform/charpoly.hpp"
#include "polyform/design.hpp"
#include "polyform/errors.hpp"
#include "polyform/io.hpp"
#include "polyform/polygon.hpp"
#include "polyform/regions.hpp"
#include "polyform/spectrum.hpp"
#include "polyform/svg.hpp"
#include "polyform/transform.hpp"
