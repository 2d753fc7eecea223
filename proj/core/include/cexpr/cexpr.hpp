#pragma once

#include "cexpr/basis.hpp"
#include "cexpr/constraints.hpp"
#include "cexpr/engine.hpp"
#include "cexpr/errors.hpp"
#include "cexpr/expression.hpp"
#include "cexpr/format.hpp"
#include "cexpr/forms.hpp"
#include "cexpr/free_function.hpp"
#include "cexpr/linalg.hpp"
