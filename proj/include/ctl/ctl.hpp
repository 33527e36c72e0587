#pragma once

#include "ctl/analysis.hpp"
#include "ctl/errors.hpp"
#include "ctl/factors.hpp"
#include "ctl/matrix.hpp"
#include "ctl/polygon.hpp"
#include "ctl/spectral.hpp"
#include "ctl/system.hpp"
#include "ctl/system_io.hpp"
#include "ctl/volume.hpp"
#include "ctl/zonotope.hpp"
