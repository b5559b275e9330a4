#pragma once

#include <cutforge/term.hpp>
#include <cutforge/formula.hpp>
#include <cutforge/prop.hpp>
#include <cutforge/proof.hpp>
#include <cutforge/grammar.hpp>
#include <cutforge/herbrand.hpp>
#include <cutforge/improve.hpp>
#include <cutforge/pca.hpp>
#include <cutforge/pipeline.hpp>
#include <cutforge/io.hpp>
