#pragma once

#include "hybridkit/equiv/brute_force.hpp"
#include "hybridkit/equiv/check.hpp"
#include "hybridkit/equiv/fixpoint.hpp"
#include "hybridkit/equiv/relation.hpp"
#include "hybridkit/equiv/verify.hpp"
