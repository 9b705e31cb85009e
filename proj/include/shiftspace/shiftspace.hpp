#pragma once

#include "shiftspace/codes.hpp"
#include "shiftspace/errors.hpp"
#include "shiftspace/graph.hpp"
#include "shiftspace/groupoid.hpp"
#include "shiftspace/path_algebra.hpp"
#include "shiftspace/seq.hpp"
#include "shiftspace/spaces.hpp"
#include "shiftspace/text.hpp"
#include "shiftspace/topology.hpp"
