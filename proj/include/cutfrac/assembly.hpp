#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

#include "cutfrac/kernels.hpp"

namespace cutfrac {

/// Global system before boundary conditions, plus the Dirichlet data once applied.
struct LinearSystem {
    SparseMatrix matrix;
    Eigen::VectorXd rhs;
    std::vector<int> constrained;  ///< ascending
    std::vector<double> values;    ///< Dirichlet value per constrained DOF
};

/// Free-DOF system after eliminating Dirichlet DOFs.
struct ReducedSystem {
    SparseMatrix matrix;
    Eigen::VectorXd rhs;
    std::vector<int> free_dofs;  ///< global index of each reduced unknown
    Eigen::VectorXd lifted;      ///< full-length vector holding the Dirichlet values

    /// Full-length coefficient vector from a reduced solution.
    Eigen::VectorXd expand(const Eigen::VectorXd& reduced) const;
};

/// Scatters blocks into an exactly symmetric sparse matrix: only entries with
/// row <= column are accumulated, the lower triangle is mirrored afterwards.
SparseMatrix scatter_blocks(int ndof, std::span<const std::vector<LocalBlock>* const> groups);
void scatter_load(Eigen::VectorXd& rhs, const std::vector<LocalBlock>& blocks);

/// Matrix of the selected terms of the bilinear form.
SparseMatrix assemble_matrix(const Discretization& d, unsigned terms, Execution exec = Execution::Parallel);

SparseMatrix assemble_bulk(const Discretization& d);
SparseMatrix assemble_nitsche_interface(const Discretization& d);
SparseMatrix assemble_ghost_penalty(const Discretization& d);
SparseMatrix assemble_fracture_lb(const Discretization& d);
/// Junction consistency/penalty terms and point stabilization.
SparseMatrix assemble_bifurcation_terms(const Discretization& d);
Eigen::VectorXd assemble_load(const Discretization& d, Execution exec = Execution::Parallel);

/// Full matrix (all terms) and load.
LinearSystem assemble_system(const Discretization& d, Execution exec = Execution::Parallel);

/// Marks DOFs of vertices on Dirichlet sides. Where two Dirichlet sides with different
/// data meet, the corner takes the mean of the two values.
LinearSystem apply_boundary_conditions(LinearSystem system, const ModelSpec& model, const Mesh& mesh,
                                       const DofSpace& space);

ReducedSystem reduce(const LinearSystem& system);

} // namespace cutfrac
