#pragma once

#include <cstddef>
#include <string>

#include <nlohmann/json.hpp>

#include "sga/errors.hpp"
#include "sga/multivector.hpp"

namespace sga {

// {"dimension": D, "terms": [{"mask": "<hex>", "num": "<dec>", "den": "<dec>"}, ...]}
// Terms are sorted by mask value ascending, which is the map order.

inline nlohmann::json to_json(const Multivector& m) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [b, c] : m) {
    terms.push_back({{"mask", b.to_hex()}, {"num", c.get_num().get_str()}, {"den", c.get_den().get_str()}});
  }
  return {{"dimension", m.dimension()}, {"terms", std::move(terms)}};
}

/// Strict inverse of to_json: rejects unsorted or duplicate masks, zero or
/// non-canonical coefficients, and blades beyond the dimension.
inline Multivector multivector_from_json(const nlohmann::json& j) {
  try {
    Multivector m(j.at("dimension").get<std::size_t>());
    const Blade* prev = nullptr;
    Blade last;
    for (const auto& t : j.at("terms")) {
      const auto b = Blade::from_hex(t.at("mask").get<std::string>());
      const auto num = t.at("num").get<std::string>();
      const auto den = t.at("den").get<std::string>();
      const auto c = parse_coefficient(num, den);
      if (c == 0) throw parse_error("zero coefficient in serialized multivector");
      if (c.get_num().get_str() != num || c.get_den().get_str() != den) {
        throw parse_error("coefficient " + num + "/" + den + " is not in lowest terms");
      }
      if (prev != nullptr && !(last < b)) throw parse_error("terms are not sorted by strictly increasing mask");
      m.accumulate(b, c);
      last = b;
      prev = &last;
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("serialized multivector: ") + e.what());
  } catch (const dimension_mismatch& e) {
    throw parse_error(std::string("serialized multivector: ") + e.what());
  }
}

inline std::string dump_multivector(const Multivector& m, int indent = -1) { return to_json(m).dump(indent); }

inline Multivector parse_multivector(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("serialized multivector: ") + e.what());
  }
  return multivector_from_json(j);
}

}  // namespace sga
