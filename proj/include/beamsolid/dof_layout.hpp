#pragma once

namespace beamsolid {

/// Global DOF layout of the coupled primal vector:
/// [solid u (3 per node) | beam w, theta (6 per non-clamped node)],
/// multipliers (lambda, mu) appended after the primal block.
/// The clamped beam node (s = 0) carries no DOFs.
struct DofLayout {
  int n_solid_nodes = 0;
  int n_beam_nodes = 0;  // total beam nodes, including the clamped one

  int solid_dofs() const { return 3 * n_solid_nodes; }
  int beam_free_nodes() const { return n_beam_nodes > 0 ? n_beam_nodes - 1 : 0; }
  int beam_dofs() const { return 6 * beam_free_nodes(); }
  int primal_dofs() const { return solid_dofs() + beam_dofs(); }
  int multiplier_dofs() const { return 6; }
  int total_dofs() const { return primal_dofs() + multiplier_dofs(); }

  int solid_dof(int node, int component) const { return 3 * node + component; }

  /// free_node is 0-based among non-clamped beam nodes (beam node index - 1).
  int beam_w_dof(int free_node, int component) const {
    return solid_dofs() + 6 * free_node + component;
  }
  int beam_theta_dof(int free_node, int component) const {
    return solid_dofs() + 6 * free_node + 3 + component;
  }

  int tip_w_dof(int component) const {
    return beam_w_dof(beam_free_nodes() - 1, component);
  }
  int tip_theta_dof(int component) const {
    return beam_theta_dof(beam_free_nodes() - 1, component);
  }

  int lambda_dof(int component) const { return primal_dofs() + component; }
  int mu_dof(int component) const { return primal_dofs() + 3 + component; }
};

}  // namespace beamsolid
