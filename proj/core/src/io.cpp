#include "kbin/io.hpp"

#include <charconv>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace kbin {

namespace {

Json bigint_to_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max()) {
    return Json(v.convert_to<std::int64_t>());
  }
  return Json(v.str());
}

BigInt bigint_from_json(const Json& v) {
  if (v.is_number_integer()) {
    return v.is_number_unsigned() ? BigInt(v.get<std::uint64_t>()) : BigInt(v.get<std::int64_t>());
  }
  if (v.is_string()) {
    Rational r = parse_rational(v.get<std::string>());
    if (denominator(r) != 1) throw std::invalid_argument("expected an integer");
    return numerator(r);
  }
  throw std::invalid_argument("expected an integer");
}

}  // namespace

Json rational_to_json(const Rational& value) {
  if (denominator(value) == 1) return bigint_to_json(numerator(value));
  Json out = Json::object();
  out["num"] = bigint_to_json(numerator(value));
  out["den"] = bigint_to_json(denominator(value));
  return out;
}

Rational rational_from_json(const Json& value) {
  if (value.is_number_integer()) return Rational(bigint_from_json(value));
  if (value.is_number_float()) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value.get<double>());
    if (ec != std::errc()) throw std::invalid_argument("unrepresentable number");
    return parse_rational(std::string_view(buf, static_cast<std::size_t>(end - buf)));
  }
  if (value.is_string()) return parse_rational(value.get<std::string>());
  if (value.is_object() && value.contains("num") && value.contains("den")) {
    BigInt den = bigint_from_json(value.at("den"));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(bigint_from_json(value.at("num")), den);
  }
  throw std::invalid_argument("cannot read a rational from " + value.dump());
}

Json instance_to_json(const Instance& instance) {
  Json out = Json::object();
  out["capacity"] = rational_to_json(instance.capacity());
  Json sizes = Json::array();
  for (const auto& s : instance.sizes()) sizes.push_back(rational_to_json(s));
  out["sizes"] = std::move(sizes);
  return out;
}

Instance instance_from_json(const Json& value) {
  if (!value.is_object() || !value.contains("capacity") || !value.contains("sizes")) {
    throw std::invalid_argument("instance JSON needs 'capacity' and 'sizes'");
  }
  std::vector<Rational> sizes;
  for (const auto& s : value.at("sizes")) sizes.push_back(rational_from_json(s));
  return Instance(std::move(sizes), rational_from_json(value.at("capacity")));
}

Json packing_to_json(const KPacking& packing) {
  Json out = Json::object();
  out["k"] = packing.k;
  out["bin_count"] = packing.bin_count();
  Json bins = Json::array();
  for (const auto& bin : packing.bins) {
    Json b = Json::array();
    for (const auto& c : bin.contents) b.push_back(Json::array({c.item, c.copy}));
    bins.push_back(std::move(b));
  }
  out["bins"] = std::move(bins);
  return out;
}

KPacking packing_from_json(const Json& value) {
  KPacking out;
  out.k = value.at("k").get<int>();
  for (const auto& b : value.at("bins")) {
    Bin bin;
    for (const auto& c : b) bin.contents.push_back({c.at(0).get<ItemId>(), c.at(1).get<std::int32_t>()});
    out.bins.push_back(std::move(bin));
  }
  return out;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return Json::parse(in);
}

Instance load_instance(const std::filesystem::path& path) { return instance_from_json(read_json_file(path)); }

}  // namespace kbin
