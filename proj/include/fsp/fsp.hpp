#pragma once

#include "fsp/bench.hpp"
#include "fsp/core.hpp"
#include "fsp/errors.hpp"
#include "fsp/generate.hpp"
#include "fsp/io.hpp"
#include "fsp/johnson.hpp"
#include "fsp/lp.hpp"
#include "fsp/oracle.hpp"
#include "fsp/ptas.hpp"
#include "fsp/rational.hpp"
