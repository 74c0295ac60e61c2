#pragma once

#include "ait/bits.hpp"
#include "ait/complexity.hpp"
#include "ait/dyadic.hpp"
#include "ait/encoders.hpp"
#include "ait/interpreter.hpp"
#include "ait/kraft.hpp"
#include "ait/lisp_complexity.hpp"
#include "ait/machine.hpp"
#include "ait/omega.hpp"
#include "ait/report.hpp"
#include "ait/search.hpp"
#include "ait/sexpr.hpp"
#include "ait/theory.hpp"
