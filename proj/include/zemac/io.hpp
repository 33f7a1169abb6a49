#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"
#include "zemac/overlap.hpp"
#include "zemac/region.hpp"
#include "zemac/zec_codec.hpp"

namespace zemac::io {

using Json = nlohmann::ordered_json;

/// Parses a JSON document from disk; wraps failures as ValidationError.
Json parse_file(const std::string& path);

Channel channel_from_json(const Json& j);
World world_from_json(const Json& j);
CooperationStructure structure_from_json(const Channel& ch, const Json& j);
Code code_from_json(const Json& j);

Json world_to_json(const World& w);
Json structure_to_json(const CooperationStructure& s);
Json code_to_json(const Code& code);
Json synthesis_to_json(const SynthesisResult& result);
Json verify_to_json(const VerifyReport& report);
Json info_to_json(const InfoValue& value);
Json partition_to_json(const Partition& p);
Json region_to_json(const RateRegion& region);
Json oracle_region_to_json(const OracleRegion& region);

std::string region_csv(const RateRegion& region);
std::string oracle_region_csv(const OracleRegion& region);

/// Canonical writer: insertion-ordered keys, two-space indent, floats with
/// exactly six fractional digits. Identical documents serialize to
/// identical bytes.
void write_json(std::ostream& os, const Json& j);
std::string dump_json(const Json& j);

} // namespace zemac::io
