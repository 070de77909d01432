#pragma once

#include "inewton/error.hpp"
#include "inewton/forcing/rules.hpp"
#include "inewton/forcing/schedules.hpp"
#include "inewton/forcing/strategy.hpp"
#include "inewton/krylov/gmres.hpp"
#include "inewton/linalg/csr_matrix.hpp"
#include "inewton/linalg/dense_vector.hpp"
#include "inewton/linalg/ilu0.hpp"
#include "inewton/newton/problem.hpp"
#include "inewton/newton/solver.hpp"
#include "inewton/problems/bratu2d.hpp"
#include "inewton/problems/chandrasekhar.hpp"
#include "inewton/problems/twophase1d.hpp"
#include "inewton/timestepping/transient.hpp"
#include "inewton/verification/constructed_maps.hpp"
#include "inewton/verification/lemma1.hpp"
#include "inewton/verification/order.hpp"
#include "inewton/verification/scale.hpp"
