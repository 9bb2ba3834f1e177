#pragma once

#include "pcm/error.hpp"
#include "pcm/matrix.hpp"
#include "pcm/io.hpp"
#include "pcm/graph.hpp"
#include "pcm/linalg.hpp"
#include "pcm/priority.hpp"
#include "pcm/indices.hpp"
#include "pcm/montecarlo.hpp"
