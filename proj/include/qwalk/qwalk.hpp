#pragma once

#include "qwalk/equilibration.hpp"
#include "qwalk/error.hpp"
#include "qwalk/eth.hpp"
#include "qwalk/graph.hpp"
#include "qwalk/io.hpp"
#include "qwalk/jacobi.hpp"
#include "qwalk/random.hpp"
#include "qwalk/spectral.hpp"
#include "qwalk/subsystem.hpp"
#include "qwalk/walk.hpp"
