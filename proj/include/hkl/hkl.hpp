#pragma once

#include "hkl/laurent.hpp"
#include "hkl/coxeter.hpp"
#include "hkl/hecke.hpp"
#include "hkl/klbasis.hpp"
#include "hkl/hybrid.hpp"
#include "hkl/oracles.hpp"
#include "hkl/serialize.hpp"
#include "hkl/verify.hpp"
