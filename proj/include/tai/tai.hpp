#pragma once

// Umbrella header for the library (the CLI front end lives in tai/cli.hpp
// and is kept separate because it pulls in vendored dependencies).

#include "tai/closure.hpp"
#include "tai/complexity.hpp"
#include "tai/core.hpp"
#include "tai/grounding.hpp"
#include "tai/mining.hpp"
#include "tai/proofs.hpp"
#include "tai/semantics.hpp"
#include "tai/textio.hpp"
