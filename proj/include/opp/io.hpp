#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"

#include "opp/blockade.hpp"
#include "opp/leafcover.hpp"
#include "opp/purepair.hpp"

namespace opp {

/// OGR v1: `n m`, then m lines `u v`. Blank lines and lines starting with `#`
/// are skipped. Throws InputError with the offending line number.
OrderedGraph parse_ogr(std::istream& in);
OrderedGraph read_ogr_file(const std::string& path);

/// Canonical text: header, then edges sorted with u < v.
std::string format_ogr(const OrderedGraph& g);
void write_ogr_file(const OrderedGraph& g, const std::string& path);

/// One block per line: either a bare array of vertices (indices 1, 2, ... by
/// line) or an object {"index": i, "vertices": [...]}. The two forms may not be mixed.
Blockade parse_blockade_jsonl(std::istream& in, const OrderedGraph& g);
Blockade read_blockade_file(const std::string& path, const OrderedGraph& g);

/// Object form, one line per block.
std::string format_blockade_jsonl(const Blockade& b);

nlohmann::json to_json(const Blockade& b);
nlohmann::json to_json(const BlockadeMeasures& m);
nlohmann::json to_json(const SubpairWitness& w);
nlohmann::json to_json(const ResistanceVerdict& v);
nlohmann::json to_json(const BandVerdict& v);
nlohmann::json to_json(const AnticompleteBlocks& a);
nlohmann::json to_json(const ShrinkResistResult& r);
nlohmann::json to_json(const BandResult& r);
nlohmann::json to_json(const LeafCoveredBlockade& l);
nlohmann::json to_json(const LeafVerdict& v);
nlohmann::json to_json(const PurePairWitness& w);

}  // namespace opp
