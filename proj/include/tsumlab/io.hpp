#pragma once

/**
 * @file io.hpp
 * @brief JSON forms of groups and instances, group strings, file helpers.
 *
 * Element ids are written as decimal strings.
 *
 *   group:    {"kind":"cyclic","modulus":"101"} | {"kind":"xor","width":8}
 *             | {"kind":"product","left":{...},"right":{...}}
 *   instance: {"group":{...},"A1":["1","2"],"A2":["2","4"]}
 */

#include <cctype>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "tsumlab/bigint.hpp"
#include "tsumlab/error.hpp"
#include "tsumlab/group.hpp"
#include "tsumlab/instance.hpp"

namespace tsumlab {

using Json = nlohmann::json;

inline Json group_to_json(const GroupSpec& g) {
    switch (g.kind()) {
        case GroupSpec::Kind::Cyclic: return Json{{"kind", "cyclic"}, {"modulus", g.modulus().str()}};
        case GroupSpec::Kind::Xor: return Json{{"kind", "xor"}, {"width", g.width()}};
        case GroupSpec::Kind::Product:
            return Json{{"kind", "product"}, {"left", group_to_json(g.left())}, {"right", group_to_json(g.right())}};
    }
    return {};
}

inline Id id_from_json(const Json& j, const std::string& where) {
    if (j.is_string()) {
        try {
            return parse_decimal(j.get<std::string>());
        } catch (const Error& e) {
            throw Error(Errc::ParseError, where + ": " + e.what());
        }
    }
    if (j.is_number_unsigned()) return Id(j.get<std::uint64_t>());
    throw Error(Errc::ParseError, where + ": expected a decimal string");
}

inline GroupSpec group_from_json(const Json& j, const std::string& where = "group") {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
        throw Error(Errc::ParseError, where + ": expected an object with a string 'kind'");
    }
    const auto kind = j["kind"].get<std::string>();
    if (kind == "cyclic") {
        if (!j.contains("modulus")) throw Error(Errc::ParseError, where + ": missing 'modulus'");
        const Id m = id_from_json(j["modulus"], where + ".modulus");
        if (m < 1) throw Error(Errc::ParseError, where + ".modulus: must be >= 1");
        return GroupSpec::cyclic(m);
    }
    if (kind == "xor") {
        if (!j.contains("width") || !j["width"].is_number_unsigned()) throw Error(Errc::ParseError, where + ": missing integer 'width'");
        return GroupSpec::xor_bits(j["width"].get<unsigned>());
    }
    if (kind == "product") {
        if (!j.contains("left") || !j.contains("right")) throw Error(Errc::ParseError, where + ": product needs 'left' and 'right'");
        return GroupSpec::product(group_from_json(j["left"], where + ".left"), group_from_json(j["right"], where + ".right"));
    }
    throw Error(Errc::ParseError, where + ": unknown group kind '" + kind + "'");
}

namespace detail {

class GroupStringParser {
public:
    explicit GroupStringParser(const std::string& s) : s_(s) {}

    GroupSpec parse() {
        auto g = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return g;
    }

private:
    GroupSpec expr() {
        auto g = term();
        skip();
        while (pos_ < s_.size() && s_[pos_] == '*') {
            ++pos_;
            g = GroupSpec::product(std::move(g), term());
            skip();
        }
        return g;
    }

    GroupSpec term() {
        skip();
        if (pos_ < s_.size() && s_[pos_] == '(') {
            ++pos_;
            auto g = expr();
            skip();
            if (pos_ >= s_.size() || s_[pos_] != ')') fail("expected ')'");
            ++pos_;
            return g;
        }
        const auto start = pos_;
        while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        const auto kind = s_.substr(start, pos_ - start);
        if (pos_ >= s_.size() || s_[pos_] != ':') fail("expected ':' after group kind");
        ++pos_;
        const auto nstart = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (nstart == pos_) fail("expected a number");
        const auto num = s_.substr(nstart, pos_ - nstart);
        if (kind == "cyclic") {
            const Id m = parse_decimal(num);
            if (m < 1) fail("cyclic modulus must be >= 1");
            return GroupSpec::cyclic(m);
        }
        if (kind == "xor") {
            if (num.size() > 6) fail("xor width too large");
            return GroupSpec::xor_bits(static_cast<unsigned>(std::stoul(num)));
        }
        pos_ = start;
        fail("unknown group kind '" + kind + "'");
        return GroupSpec::cyclic(1);
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    [[noreturn]] void fail(const std::string& what) {
        throw Error(Errc::ParseError, "group string '" + s_ + "' at column " + std::to_string(pos_ + 1) + ": " + what);
    }

    std::string s_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// "cyclic:101", "xor:8", "cyclic:2*cyclic:5", "(xor:1*cyclic:7)".
inline GroupSpec parse_group_string(const std::string& s) { return detail::GroupStringParser(s).parse(); }

inline Json ids_to_json(std::span<const Id> ids) {
    Json a = Json::array();
    for (const auto& e : ids) a.push_back(e.str());
    return a;
}

inline std::vector<Id> ids_from_json(const Json& j, const std::string& where) {
    if (!j.is_array()) throw Error(Errc::ParseError, where + ": expected an array");
    std::vector<Id> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(id_from_json(j[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

inline Json instance_to_json(const TsumInstance& inst) {
    return Json{{"group", group_to_json(inst.group())}, {"A1", ids_to_json(inst.A1())}, {"A2", ids_to_json(inst.A2())}};
}

inline TsumInstance instance_from_json(const Json& j) {
    if (!j.is_object()) throw Error(Errc::ParseError, "instance: expected an object");
    for (const char* key : {"group", "A1", "A2"})
        if (!j.contains(key)) throw Error(Errc::ParseError, std::string("instance: missing '") + key + "'");
    auto g = group_from_json(j["group"]);
    auto a1 = ids_from_json(j["A1"], "A1");
    auto a2 = ids_from_json(j["A2"], "A2");
    for (std::size_t i = 0; i < a1.size(); ++i)
        if (!g.contains(a1[i])) throw Error(Errc::InvalidElement, "A1[" + std::to_string(i) + "] = " + a1[i].str() + " not in " + g.describe());
    for (std::size_t i = 0; i < a2.size(); ++i)
        if (!g.contains(a2[i])) throw Error(Errc::InvalidElement, "A2[" + std::to_string(i) + "] = " + a2[i].str() + " not in " + g.describe());
    return TsumInstance::make(std::move(g), std::move(a1), std::move(a2));
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::IoError, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::IoError, "cannot write '" + path + "'");
    out << text;
    if (!out) throw Error(Errc::IoError, "write failed for '" + path + "'");
}

/// Parses JSON text; errors carry the byte offset and line/column.
inline Json parse_json_text(const std::string& text, const std::string& source) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i < e.byte && i <= text.size(); ++i) {
            if (i > 0 && text[i - 1] == '\n') {
                ++line;
                col = 1;
            } else if (i > 0) {
                ++col;
            }
        }
        throw Error(Errc::ParseError, source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + e.what());
    }
}

inline Json read_json_file(const std::string& path) { return parse_json_text(read_text_file(path), path); }

inline std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace tsumlab
