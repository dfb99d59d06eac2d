#pragma once

#include "arrfree/arrangement.hpp"
#include "arrfree/arrio.hpp"
#include "arrfree/freeness.hpp"
#include "arrfree/gradedspace.hpp"
#include "arrfree/hilbert.hpp"
#include "arrfree/lattice.hpp"
#include "arrfree/logmod.hpp"
#include "arrfree/matrix.hpp"
#include "arrfree/mpoly.hpp"
#include "arrfree/numeric.hpp"
#include "arrfree/ratfunc.hpp"
#include "arrfree/upoly.hpp"
#include "arrfree/weyl.hpp"
