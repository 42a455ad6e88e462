// Umbrella header: pulls in the whole library.
#pragma once

#include "rmkit/bigint.hpp"
#include "rmkit/cli.hpp"
#include "rmkit/contfrac.hpp"
#include "rmkit/errors.hpp"
#include "rmkit/functor.hpp"
#include "rmkit/io.hpp"
#include "rmkit/json_report.hpp"
#include "rmkit/lattices.hpp"
#include "rmkit/matrix2z.hpp"
#include "rmkit/modgroup.hpp"
#include "rmkit/quadratic.hpp"
#include "rmkit/verify.hpp"
#include "rmkit/version.hpp"
