#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "syncnet/graph.hpp"
#include "syncnet/matrix.hpp"

namespace syncnet::io {

// Graph file:  { "n": 6, "edges": [[1, 2], [1, 5], ...] }   (1-indexed)
// Matrix file: { "rows": 3, "cols": 3, "data": [row-major reals] }
// All parse failures raise Errc::Parse; semantic ones keep their own code.

Graph graph_from_json_text(const std::string& text);
std::string graph_to_json_text(const Graph& g);
Graph read_graph_file(const std::filesystem::path& path);

Matrix matrix_from_json_text(const std::string& text);
std::string matrix_to_json_text(const Matrix& m);
Matrix read_matrix_file(const std::filesystem::path& path);
void write_matrix_file(const std::filesystem::path& path, const Matrix& m);

/// A vector is a matrix file with one row or one column.
std::vector<double> read_vector_file(const std::filesystem::path& path);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace syncnet::io
