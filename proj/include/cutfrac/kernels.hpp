#pragma once

#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "cutfrac/cut_topology.hpp"
#include "cutfrac/dof_space.hpp"
#include "cutfrac/fracture_graph.hpp"
#include "cutfrac/mesh.hpp"
#include "cutfrac/model.hpp"
#include "cutfrac/subdomains.hpp"

namespace cutfrac {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// Parallel variants use OpenMP; serial variants are the reference they are tested against.
/// Both produce bitwise-identical results.
enum class Execution { Serial, Parallel };

/// Bit flags selecting parts of the bilinear form.
enum Term : unsigned {
    kBulk = 1u << 0,
    kNitsche = 1u << 1,
    kGhostPenalty = 1u << 2,
    kFractureStiffness = 1u << 3,
    kJunction = 1u << 4,
    kPointStabilization = 1u << 5,
    kAllTerms = (1u << 6) - 1,
};

/// Everything the assembly needs; all referenced objects must outlive it.
struct Discretization {
    const Mesh& mesh;
    const FractureGraph& graph;
    const SubdomainMap& subdomains;
    const CutTopology& topo;
    const DofSpace& space;
    const ModelSpec& model;
    ResolvedParameters params;
};

/// Dense contribution over a list of global DOFs. The list may repeat a DOF; repeated
/// entries are summed on scatter.
struct LocalBlock {
    std::vector<int> dofs;
    Eigen::MatrixXd K;
    Eigen::VectorXd b;
};

/// Bulk, interface and fracture-stiffness terms of one element plus its load.
LocalBlock element_block(const Discretization& d, int e, unsigned terms, bool with_load);
/// Ghost penalty on interior face f for the copy of subdomain k.
LocalBlock ghost_face_block(const Discretization& d, int k, int f);
/// Junction consistency and penalty terms at graph node i. Throws NodeNotVertex when a
/// node shared by two or more edge ends is not a mesh vertex.
LocalBlock junction_block(const Discretization& d, int node);
/// Tangential-gradient jump penalties at the points where edges leave elements near junctions.
std::vector<LocalBlock> point_stabilization_blocks(const Discretization& d);

std::vector<LocalBlock> compute_element_blocks(const Discretization& d, unsigned terms, bool with_load, Execution exec);
std::vector<LocalBlock> compute_ghost_blocks(const Discretization& d, Execution exec);

/// y = A x
void spmv(const SparseMatrix& A, const Eigen::VectorXd& x, Eigen::VectorXd& y, Execution exec);
/// Blocked dot product; summation order is independent of the thread count.
double dot(const Eigen::VectorXd& x, const Eigen::VectorXd& y, Execution exec);

/// Threads OpenMP would use (1 when built without OpenMP).
int kernel_threads();

} // namespace cutfrac
