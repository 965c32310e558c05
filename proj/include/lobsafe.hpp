#pragma once

// Umbrella header.

#include "lobsafe/analyze.hpp"
#include "lobsafe/countermodel.hpp"
#include "lobsafe/formula.hpp"
#include "lobsafe/kripke.hpp"
#include "lobsafe/kripke_io.hpp"
#include "lobsafe/library.hpp"
#include "lobsafe/parser.hpp"
#include "lobsafe/presets.hpp"
#include "lobsafe/proof.hpp"
#include "lobsafe/propositional.hpp"
#include "lobsafe/sahlqvist.hpp"
#include "lobsafe/schema.hpp"
