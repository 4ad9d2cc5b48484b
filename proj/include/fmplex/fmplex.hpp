#pragma once

#include <fmplex/delta.hpp>
#include <fmplex/driver.hpp>
#include <fmplex/farkas.hpp>
#include <fmplex/fm.hpp>
#include <fmplex/gauss.hpp>
#include <fmplex/generator.hpp>
#include <fmplex/linalg.hpp>
#include <fmplex/projection.hpp>
#include <fmplex/qe.hpp>
#include <fmplex/redundancy.hpp>
#include <fmplex/search.hpp>
#include <fmplex/simplex.hpp>
#include <fmplex/smtlib/parser.hpp>
#include <fmplex/smtlib/printer.hpp>
#include <fmplex/smtlib/witness.hpp>
