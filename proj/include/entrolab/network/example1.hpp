#pragma once

#include "entrolab/network/aux_spec.hpp"
#include "entrolab/network/problem.hpp"

namespace entrolab::network {

/// Three sources at node 1 built from independent uniform bits b0, b1, b2:
/// Y1 = (b0,b1), Y2 = (b0,b2), Y3 = (b1,b2), demanded at nodes 3, 4, 5.
/// Edges U1: 1->2, U2: 1->3, U3: 1->4, U4: 1->5 have free capacities; relay
/// edges R3, R4, R5 from node 2 to nodes 3, 4, 5 are uncapacitated.
NetworkProblem example1_problem();

/// Distribution over the base LP ground set (Y1..Y3, U1..U4, R3..R5) whose
/// entropy vector satisfies the base LP at C = (1,1,1,1): the third source
/// slot holds (b0, b1 xor b2), U1 = b0, U2 = b1, U3 = b2, U4 = b1 xor b2, and
/// every relay forwards b0.
JointDistribution example1_witness_distribution();

/// Z0 = b0, Z1 = b1, Z2 = b2 as functions of the sources; all joint
/// entropies of sources and Z fixed.
AuxSpec example1_aux_functional();

/// Only Z0 = b0.
AuxSpec example1_aux_z0();

/// The hand-selected rows: h(Z_a) = |a|, h(Y1|Z0,Z1) = h(Y2|Z0,Z2) =
/// h(Y3|Z1,Z2) = 0, h(Z0,Z1) = h(Y1), h(Z0,Z2) = h(Y2), h(Z1,Z2) = h(Y3).
AuxSpec example1_aux_selected();

}  // namespace entrolab::network
