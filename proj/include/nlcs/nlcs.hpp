#pragma once

// Everything: parsing, both decision engines, conflict extraction.
#include "cad.hpp"
#include "conflict.hpp"
#include "constraint.hpp"
#include "corpus.hpp"
#include "engine.hpp"
#include "parser.hpp"
#include "reduction.hpp"
#include "vs.hpp"
