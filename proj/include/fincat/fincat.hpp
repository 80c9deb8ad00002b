#pragma once

// umbrella header: the whole workbench

#include "common.hpp"
#include "core.hpp"
#include "catalog.hpp"
#include "ends.hpp"
#include "elements.hpp"
#include "kan.hpp"
#include "cauchy.hpp"
#include "profunctor.hpp"
#include "io.hpp"
