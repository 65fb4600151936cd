#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>
#include <vector>

#include "ensnc/discretization.hpp"
#include "ensnc/ensemble.hpp"
#include "ensnc/fe_space.hpp"

namespace ensnc {

/// Nodal data on the P2 nodes (vertices, then edge midpoints).
struct PointScalarField {
  std::string name;
  Eigen::VectorXd values;  // one value per node
};

struct PointVectorField {
  std::string name;
  Eigen::VectorXd values;  // component blocks: all x values, then all y values
};

/// Legacy-VTK ASCII unstructured grid: the P2 nodes as points and every
/// triangle split into four linear sub-triangles (VTK type 5), with the
/// given fields as point data.
void write_p2_vtk(std::ostream& out, const FeSpace& scalar_p2, const std::vector<PointScalarField>& scalars,
                  const std::vector<PointVectorField>& vectors, const std::string& title = "ensnc");

/// P1 pressure evaluated at the P2 nodes (edge midpoints get the mean of their end points).
Eigen::VectorXd pressure_at_p2_nodes(const Discretization& disc, const Eigen::VectorXd& p);

/// Velocity, temperature and pressure of one member state (current level).
void write_state_vtk(std::ostream& out, const Discretization& disc, const MemberState& state,
                     const std::string& title = "ensnc");

}  // namespace ensnc
