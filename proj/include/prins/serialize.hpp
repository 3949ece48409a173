// JSON and DOT serialization with deterministic output ordering, so identical
// inputs produce byte-identical artifacts.
#pragma once

#include <string>

#include <json.hpp>

#include "prins/gfsm.hpp"
#include "prins/log.hpp"

namespace prins {

using ordered_json = nlohmann::ordered_json;

// {states:[int], alphabet:[string], initial:int, finals:[int],
//  transitions:[{src,event,guard:{kind,params?},dst}]}
ordered_json model_to_json(const Gfsm& m);
Gfsm model_from_json(const ordered_json& j);
std::string model_to_json_text(const Gfsm& m);
Gfsm model_from_json_text(const std::string& text);

// One node per state (double circle for finals), edges labeled
// `event [guard]`; states ascending, transitions lexicographic.
std::string model_to_dot(const Gfsm& m);

ordered_json logset_to_json(const LogSet& logs);
LogSet logset_from_json(const ordered_json& j);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace prins
