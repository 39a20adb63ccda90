#pragma once

#include "ssem/term.hpp"
#include "ssem/substitution.hpp"
#include "ssem/lists.hpp"
#include "ssem/variant.hpp"
#include "ssem/unify.hpp"
#include "ssem/syntax.hpp"
#include "ssem/sld.hpp"
#include "ssem/semantics.hpp"
#include "ssem/report.hpp"
#include "ssem/spec.hpp"
#include "ssem/nqueens.hpp"
