#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "slag/embedding.hpp"
#include "slag/grid.hpp"
#include "slag/winding.hpp"

namespace slag::io {

/// Shortest-free fixed formatting: 17 significant digits, round-trips exactly.
std::string format_double(double value);

void write_field_csv(std::ostream& out, const ScalarField2D& field);
void write_field_csv(const std::filesystem::path& path, const ScalarField2D& field);

/// Reads a field written by write_field_csv (header, then x,y,value rows).
/// The grid is rebuilt from the distinct x and y coordinates.
ScalarField2D read_field_csv(const std::filesystem::path& path);

/// Legacy ASCII VTK STRUCTURED_GRID with one scalar array.
void write_field_vtk(std::ostream& out, const ScalarField2D& field, std::string_view name);
void write_field_vtk(const std::filesystem::path& path, const ScalarField2D& field,
                     std::string_view name);

/// Boundary values in traversal order, one "x,y,value" row per boundary node.
BoundaryData read_boundary_csv(const std::filesystem::path& path, const GridDomain& domain);

/// One real coordinate of C^n: Re z_k or Im z_k (index is 0-based).
struct Coordinate {
  int index = 0;
  bool imaginary = false;
};

/// Parses "re:z3,im:z3,re:z1". Throws InvalidArgument for unknown names or
/// indices outside 1..n.
std::vector<Coordinate> parse_projection(std::string_view text, int n);
std::string coordinate_name(const Coordinate& c);

/// x,y,u,v,w,theta_total,re_z1,im_z1,...,re_zn,im_zn
void write_samples_csv(std::ostream& out, const std::vector<EmbeddedSample>& samples, int n);
/// POLYDATA point cloud over three selected real coordinates.
void write_samples_vtk(std::ostream& out, const std::vector<EmbeddedSample>& samples,
                       const std::vector<Coordinate>& projection);
void write_skipped_csv(std::ostream& out, const std::vector<SkippedNode>& skipped);

/// x,y,f1,f2,cumulative_angle
void write_trace_csv(std::ostream& out, const LoopTrace& trace, const WindingResult& result);

}  // namespace slag::io
