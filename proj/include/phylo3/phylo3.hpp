#pragma once

#include "phylo3/catalog.hpp"
#include "phylo3/chordal.hpp"
#include "phylo3/classify.hpp"
#include "phylo3/decide.hpp"
#include "phylo3/error.hpp"
#include "phylo3/fitch_meacham.hpp"
#include "phylo3/graph.hpp"
#include "phylo3/hypergraph.hpp"
#include "phylo3/matrix.hpp"
#include "phylo3/oracle.hpp"
#include "phylo3/parallel.hpp"
#include "phylo3/tree.hpp"
#include "phylo3/triple.hpp"
