#pragma once

// Umbrella header: landmark spectral embeddings through the renormalized
// Neumann Laplacian of an induced subgraph, with diffusion-map and
// reference-set baselines, landmark selection schemes, clustering metrics
// and the config-driven pipeline.

#include "neumaps/baselines.hpp"
#include "neumaps/csv.hpp"
#include "neumaps/eigensolver.hpp"
#include "neumaps/errors.hpp"
#include "neumaps/eval.hpp"
#include "neumaps/graph.hpp"
#include "neumaps/kernel_spectral.hpp"
#include "neumaps/kernels.hpp"
#include "neumaps/landmarks.hpp"
#include "neumaps/neumann.hpp"
#include "neumaps/pipeline.hpp"
#include "neumaps/rng.hpp"
#include "neumaps/synthetic.hpp"
