#include <stdexcept>

#include "nov/morse.hpp"

namespace nov {

namespace {

void add_cell(MorseModel& m, const std::string& label, int parity, const Rational& value) {
  m.cells.push_back(Generator{label, parity});
  m.values.push_back(value);
}

}  // namespace

MorseModel point_model() {
  MorseModel m;
  m.name = "point";
  add_cell(m, "p", 0, -1);
  return m;
}

MorseModel interval_model() {
  MorseModel m;
  m.name = "interval";
  add_cell(m, "a0", 0, -2);
  add_cell(m, "a1", 0, -2);
  add_cell(m, "b", 1, -1);
  m.boundary[{2, 0}] = 1;
  m.boundary[{2, 1}] = -1;
  return m;
}

MorseModel circle_model(int vertices) {
  if (vertices < 2) throw std::invalid_argument("circle needs at least two vertices");
  MorseModel m;
  m.name = vertices == 2 ? "circle" : "circle" + std::to_string(2 * vertices);
  for (int j = 0; j < vertices; ++j) add_cell(m, "v" + std::to_string(j), 0, -2);
  for (int j = 0; j < vertices; ++j) add_cell(m, "e" + std::to_string(j), 1, -1);
  // e_j runs from v_j to v_{j+1}
  for (int j = 0; j < vertices; ++j) {
    m.boundary[{vertices + (j + vertices - 1) % vertices, j}] += 1;
    m.boundary[{vertices + j, j}] -= 1;
  }
  return m;
}

MorseModel sphere_model() {
  MorseModel m;
  m.name = "s2";
  add_cell(m, "min", 0, -2);
  add_cell(m, "max", 0, -1);
  return m;
}

MorseModel torus_model() {
  MorseModel m;
  m.name = "t2";
  add_cell(m, "min", 0, -4);
  add_cell(m, "s1", 1, -3);
  add_cell(m, "s2", 1, -2);
  add_cell(m, "max", 0, -1);
  return m;
}

MorseModel product_model(const MorseModel& base, const MorseModel& fiber, bool own_base) {
  MorseModel m;
  m.name = base.name + "x" + fiber.name;
  const int nf = fiber.size();
  for (int b = 0; b < base.size(); ++b) {
    for (int f = 0; f < nf; ++f) {
      const std::string label =
          nf == 1 ? base.cells[b].label : base.cells[b].label + "x" + fiber.cells[f].label;
      add_cell(m, label, base.cells[b].parity ^ fiber.cells[f].parity,
               base.values[b] + fiber.values[f]);
      m.base.push_back(own_base ? label : base.cells[b].label);
    }
  }
  for (const auto& [k, c] : base.boundary) {
    for (int f = 0; f < nf; ++f) m.boundary[{k.first * nf + f, k.second * nf + f}] += c;
  }
  for (int b = 0; b < base.size(); ++b) {
    const long sign = base.cells[b].parity ? -1 : 1;
    for (const auto& [k, c] : fiber.boundary) {
      m.boundary[{b * nf + k.first, b * nf + k.second}] += sign * c;
    }
  }
  return m;
}

MorseModel circle_base_model() {
  MorseModel m = circle_model(3);
  m.name = "circle6";
  for (const auto& c : m.cells) m.base.push_back(c.label);
  return m;
}

MorseModel circle_bundle_model() {
  MorseModel m = product_model(circle_model(3), circle_model(2), false);
  m.name = "circle6x4";
  return m;
}

MorseModel torus_grid_model() {
  MorseModel m = product_model(circle_model(2), circle_model(3), true);
  m.name = "torus-grid";
  return m;
}

std::vector<std::string> bundled_model_names() {
  return {"point", "interval", "circle", "s2", "t2", "circle6", "circle6x4", "torus-grid"};
}

MorseModel bundled_model(const std::string& name) {
  if (name == "point") return point_model();
  if (name == "interval") return interval_model();
  if (name == "circle") return circle_model(2);
  if (name == "s2") return sphere_model();
  if (name == "t2") return torus_model();
  if (name == "circle6") return circle_base_model();
  if (name == "circle6x4") return circle_bundle_model();
  if (name == "torus-grid") return torus_grid_model();
  throw NovikovError("UnknownModel", "no bundled model named " + name);
}

}  // namespace nov
