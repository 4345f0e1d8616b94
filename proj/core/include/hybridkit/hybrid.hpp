#pragma once

#include "hybridkit/hybrid/model.hpp"
#include "hybridkit/hybrid/semantics.hpp"
#include "hybridkit/hybrid/sentence.hpp"
#include "hybridkit/hybrid/signature.hpp"
