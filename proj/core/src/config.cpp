#include "handforge/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "handforge/errors.hpp"

namespace handforge {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw InvalidInput("spec document: " + path + ": " + message);
}

double get_number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

double number_or(const json& parent, const char* key, double fallback,
                 const std::string& path) {
  if (!parent.contains(key)) return fallback;
  return get_number(parent.at(key), path + "/" + key);
}

int int_or(const json& parent, const char* key, int fallback,
           const std::string& path) {
  if (!parent.contains(key)) return fallback;
  const json& j = parent.at(key);
  if (!j.is_number_integer()) fail(path + "/" + key, "expected an integer");
  return j.get<int>();
}

Interval parse_interval(const json& j, const std::string& path, Interval fallback) {
  Interval iv = fallback;
  if (!j.is_object()) fail(path, "expected an object with min/max/step");
  iv.min = number_or(j, "min", fallback.min, path);
  iv.max = number_or(j, "max", fallback.max, path);
  iv.step = number_or(j, "step", fallback.step, path);
  if (iv.step <= 0.0) fail(path + "/step", "must be positive");
  if (iv.min > iv.max) fail(path, "min exceeds max (empty interval)");
  return iv;
}

constexpr std::array<const char*, 5> kChainKeys = {"thumb", "index", "middle",
                                                   "ring", "little"};

void parse_link_triplets(const json& j, std::array<std::array<double, 3>, 5>& out,
                         const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object keyed by chain name");
  for (int c = 0; c < 5; ++c) {
    const char* key = kChainKeys[static_cast<std::size_t>(c)];
    if (!j.contains(key)) continue;
    const json& arr = j.at(key);
    const std::string apath = path + "/" + key;
    if (!arr.is_array() || arr.size() != 3) fail(apath, "expected 3 numbers");
    for (int l = 0; l < 3; ++l)
      out[static_cast<std::size_t>(c)][static_cast<std::size_t>(l)] =
          get_number(arr.at(static_cast<std::size_t>(l)),
                     apath + "/" + std::to_string(l));
  }
}

}  // namespace

AnthropometricTable HandSpecDocument::make_table() const {
  return scale_proportions(hand_length_mm, fractions, widths_mm);
}

std::vector<FingerPlacement> HandSpecDocument::make_placements() const {
  switch (placement_mode) {
    case PlacementMode::Reference:
      return reference_placements();
    case PlacementMode::Generate:
      return place_finger_bases(make_table(), angular_offsets_deg);
    case PlacementMode::Explicit:
      return explicit_placements;
  }
  throw InvalidInput("unknown placement mode");
}

HandSpecDocument parse_spec_document(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("spec document: ") + e.what());
  }
  if (!j.is_object()) throw InvalidInput("spec document: top level must be an object");

  HandSpecDocument doc;
  doc.schema_version = int_or(j, "schema_version", 1, "");
  if (doc.schema_version != 1)
    fail("/schema_version", "unsupported version (expected 1)");
  if (j.contains("seed")) {
    const json& s = j.at("seed");
    if (!s.is_number_integer() || s.get<long long>() < 0)
      fail("/seed", "expected a non-negative integer");
    doc.seed = s.get<std::uint64_t>();
  }

  if (j.contains("hand")) {
    const json& hand = j.at("hand");
    if (!hand.is_object()) fail("/hand", "expected an object");
    doc.hand_length_mm = number_or(hand, "length_mm", doc.hand_length_mm, "/hand");
    if (doc.hand_length_mm <= 0.0) fail("/hand/length_mm", "must be positive");
    if (hand.contains("fractions"))
      parse_link_triplets(hand.at("fractions"), doc.fractions, "/hand/fractions");
    if (hand.contains("widths_mm"))
      parse_link_triplets(hand.at("widths_mm"), doc.widths_mm, "/hand/widths_mm");
  }

  if (j.contains("placements")) {
    const json& p = j.at("placements");
    if (!p.is_object()) fail("/placements", "expected an object");
    const std::string mode = p.value("mode", std::string("reference"));
    if (mode == "reference") {
      doc.placement_mode = PlacementMode::Reference;
    } else if (mode == "generate") {
      doc.placement_mode = PlacementMode::Generate;
      if (p.contains("offsets_deg")) {
        const json& off = p.at("offsets_deg");
        if (!off.is_object()) fail("/placements/offsets_deg", "expected an object");
        for (int i = 0; i < 4; ++i) {
          const char* key = kChainKeys[static_cast<std::size_t>(i + 1)];
          if (off.contains(key))
            doc.angular_offsets_deg[static_cast<std::size_t>(i)] = get_number(
                off.at(key), std::string("/placements/offsets_deg/") + key);
        }
      }
    } else if (mode == "explicit") {
      doc.placement_mode = PlacementMode::Explicit;
      if (!p.contains("fingers")) fail("/placements/fingers", "required for explicit mode");
      const json& fingers = p.at("fingers");
      for (int i = 0; i < 4; ++i) {
        const char* key = kChainKeys[static_cast<std::size_t>(i + 1)];
        const std::string fpath = std::string("/placements/fingers/") + key;
        if (!fingers.contains(key)) fail(fpath, "missing finger");
        const json& f = fingers.at(key);
        const json& pos = f.contains("position_mm") ? f.at("position_mm") : json();
        if (!pos.is_array() || pos.size() != 3)
          fail(fpath + "/position_mm", "expected 3 numbers");
        FingerPlacement placement;
        placement.finger = kFingerOrder[static_cast<std::size_t>(i)];
        placement.position_mm =
            Eigen::Vector3d(get_number(pos.at(0), fpath + "/position_mm/0"),
                            get_number(pos.at(1), fpath + "/position_mm/1"),
                            get_number(pos.at(2), fpath + "/position_mm/2"));
        placement.orientation_deg =
            number_or(f, "orientation_deg", 0.0, fpath);
        doc.explicit_placements.push_back(placement);
      }
    } else {
      fail("/placements/mode", "expected reference, generate or explicit");
    }
  }

  if (j.contains("search")) {
    const json& s = j.at("search");
    if (!s.is_object()) fail("/search", "expected an object");
    if (s.contains("x_mm"))
      doc.search.x_mm = parse_interval(s.at("x_mm"), "/search/x_mm", doc.search.x_mm);
    if (s.contains("y_mm"))
      doc.search.y_mm = parse_interval(s.at("y_mm"), "/search/y_mm", doc.search.y_mm);
    if (s.contains("z_mm"))
      doc.search.z_mm = parse_interval(s.at("z_mm"), "/search/z_mm", doc.search.z_mm);
    if (s.contains("theta_z_deg"))
      doc.search.theta_z_deg = parse_interval(s.at("theta_z_deg"),
                                              "/search/theta_z_deg",
                                              doc.search.theta_z_deg);
  }

  if (j.contains("ik")) {
    const json& ik = j.at("ik");
    if (!ik.is_object()) fail("/ik", "expected an object");
    doc.ik.dx_mm = number_or(ik, "dx_mm", doc.ik.dx_mm, "/ik");
    doc.ik.tol_mm = number_or(ik, "tol_mm", doc.ik.tol_mm, "/ik");
    doc.ik.epsilon_mm = number_or(ik, "epsilon_mm", doc.ik.epsilon_mm, "/ik");
    doc.ik.max_iters = int_or(ik, "max_iters", doc.ik.max_iters, "/ik");
    doc.ik.restarts = int_or(ik, "restarts", doc.ik.restarts, "/ik");
    try {
      doc.ik.validate();
    } catch (const InvalidInput& e) {
      fail("/ik", e.what());
    }
  }

  if (j.contains("grid")) {
    const json& g = j.at("grid");
    if (!g.is_object()) fail("/grid", "expected an object");
    doc.opposability.cell_mm =
        number_or(g, "cell_mm", doc.opposability.cell_mm, "/grid");
    doc.opposability.joint_resolution_deg = number_or(
        g, "joint_resolution_deg", doc.opposability.joint_resolution_deg, "/grid");
    if (doc.opposability.cell_mm <= 0.0) fail("/grid/cell_mm", "must be positive");
    if (doc.opposability.joint_resolution_deg <= 0.0)
      fail("/grid/joint_resolution_deg", "must be positive");
  }

  if (j.contains("weights")) {
    const json& w = j.at("weights");
    if (!w.is_array() || w.size() != 4) fail("/weights", "expected a 4x4 array");
    for (int r = 0; r < 4; ++r) {
      const json& row = w.at(static_cast<std::size_t>(r));
      const std::string rpath = "/weights/" + std::to_string(r);
      if (!row.is_array() || row.size() != 4) fail(rpath, "expected 4 numbers");
      for (int c = 0; c < 4; ++c) {
        const double value = get_number(row.at(static_cast<std::size_t>(c)),
                                        rpath + "/" + std::to_string(c));
        if (value < 0.0) fail(rpath + "/" + std::to_string(c), "must be non-negative");
        doc.opposability.weights(r, c) = value;
      }
    }
  }

  doc.sigma_r_threshold_pct =
      number_or(j, "sigma_r_threshold_pct", doc.sigma_r_threshold_pct, "");
  if (doc.sigma_r_threshold_pct <= 0.0)
    fail("/sigma_r_threshold_pct", "must be positive");

  doc.ik.seed = doc.seed;
  return doc;
}

HandSpecDocument load_spec_document(const std::filesystem::path& path) {
  std::ifstream file(path);
  if (!file) throw InvalidInput("cannot open spec document: " + path.string());
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return parse_spec_document(buffer.str());
}

}  // namespace handforge
