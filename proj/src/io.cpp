#include "syncnet/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "syncnet/error.hpp"

namespace syncnet::io {

using nlohmann::json;

namespace {

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(Errc::Parse, e.what());
  }
}

template <class T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(Errc::Parse, std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(Errc::Parse, std::string("field '") + key + "': " + e.what());
  }
}

}  // namespace

Graph graph_from_json_text(const std::string& text) {
  const json j = parse(text);
  const int n = field<int>(j, "n");
  const auto raw = field<std::vector<std::vector<int>>>(j, "edges");
  std::vector<Edge> edges;
  edges.reserve(raw.size());
  for (const auto& e : raw) {
    if (e.size() != 2) throw Error(Errc::Parse, "each edge must be a 2-element array");
    edges.emplace_back(e[0], e[1]);
  }
  return new_graph(n, edges);
}

std::string graph_to_json_text(const Graph& g) {
  json edges = json::array();
  for (auto [i, j] : g.edges()) edges.push_back({i, j});
  return json{{"n", g.node_count()}, {"edges", edges}}.dump() + "\n";
}

Matrix matrix_from_json_text(const std::string& text) {
  const json j = parse(text);
  const int rows = field<int>(j, "rows");
  const int cols = field<int>(j, "cols");
  if (rows < 1 || cols < 1) throw Error(Errc::Parse, "rows and cols must be positive");
  auto data = field<std::vector<double>>(j, "data");
  if (data.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
    throw Error(Errc::Parse, "data length does not equal rows*cols");
  }
  return Matrix(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols), std::move(data));
}

std::string matrix_to_json_text(const Matrix& m) {
  const std::vector<double> data(m.data().begin(), m.data().end());
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}}.dump() + "\n";
}

Matrix read_matrix_file(const std::filesystem::path& path) { return matrix_from_json_text(read_text(path)); }

void write_matrix_file(const std::filesystem::path& path, const Matrix& m) { write_text(path, matrix_to_json_text(m)); }

Graph read_graph_file(const std::filesystem::path& path) { return graph_from_json_text(read_text(path)); }

std::vector<double> read_vector_file(const std::filesystem::path& path) {
  const Matrix m = read_matrix_file(path);
  if (m.rows() != 1 && m.cols() != 1) throw Error(Errc::Parse, "vector file must have one row or one column");
  return {m.data().begin(), m.data().end()};
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::Parse, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::Parse, "cannot write " + path.string());
  out << text;
}

}  // namespace syncnet::io
