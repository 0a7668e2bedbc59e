#pragma once

// Umbrella header: rotation-system embeddings of labeled bipartite graphs,
// face tracing, the exhaustive census oracle, the v-type-edge construction
// of one-face embeddings of K_{n,n}, and exact lower-bound arithmetic.

#include "bignat.hpp"
#include "bounds.hpp"
#include "construct.hpp"
#include "embedding.hpp"
#include "error.hpp"
#include "face_trace.hpp"
#include "graph.hpp"
#include "insertion.hpp"
#include "oracle.hpp"
#include "text_format.hpp"
