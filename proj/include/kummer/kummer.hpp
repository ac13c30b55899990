#pragma once

#include "kummer/arith.hpp"
#include "kummer/eichler.hpp"
#include "kummer/invariant.hpp"
#include "kummer/isometry.hpp"
#include "kummer/lattice.hpp"
#include "kummer/mukai.hpp"
#include "kummer/normal_form.hpp"
#include "kummer/oracle.hpp"
