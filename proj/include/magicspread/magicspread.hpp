#pragma once

#include "bitvector.hpp"
#include "channel.hpp"
#include "circuits.hpp"
#include "clifford.hpp"
#include "codestate.hpp"
#include "dense.hpp"
#include "gf2.hpp"
#include "harness.hpp"
#include "lengthscales.hpp"
#include "magic.hpp"
#include "normal_form.hpp"
#include "oracle.hpp"
#include "pauli.hpp"
#include "rng.hpp"
#include "tableau.hpp"
