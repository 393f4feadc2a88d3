#ifndef MOQA_MOQA_HPP
#define MOQA_MOQA_HPP

#include "moqa/anneal.hpp"
#include "moqa/errors.hpp"
#include "moqa/expansion.hpp"
#include "moqa/generators.hpp"
#include "moqa/harness.hpp"
#include "moqa/io.hpp"
#include "moqa/oracle.hpp"
#include "moqa/qubo.hpp"
#include "moqa/rng.hpp"
#include "moqa/version.hpp"

#endif
