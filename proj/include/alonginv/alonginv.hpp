#pragma once

#include "alonginv/classical.hpp"
#include "alonginv/common.hpp"
#include "alonginv/decomp.hpp"
#include "alonginv/inner_inverse.hpp"
#include "alonginv/along.hpp"
#include "alonginv/matrix.hpp"
#include "alonginv/random.hpp"
#include "alonginv/representations.hpp"
#include "alonginv/theorems.hpp"
#include "alonginv/zn.hpp"
