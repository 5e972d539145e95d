#ifndef MEDIR_TOPICS_HPP
#define MEDIR_TOPICS_HPP

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"

namespace medir {

struct Topic {
    std::string id;
    std::string discharge_summary;
    std::string title;
    std::string desc;
    std::string profile;
    std::string narr;
};

enum class QueryField { Title, Desc, TitleDesc };

inline QueryField parse_query_field(std::string_view name) {
    if (name == "title") return QueryField::Title;
    if (name == "desc") return QueryField::Desc;
    if (name == "title+desc") return QueryField::TitleDesc;
    throw Error("unknown query field '" + std::string(name) + "' (use title, desc or title+desc)");
}

inline std::string topic_query_text(const Topic& topic, QueryField field) {
    switch (field) {
    case QueryField::Title: return topic.title;
    case QueryField::Desc: return topic.desc;
    case QueryField::TitleDesc: return topic.title + " " + topic.desc;
    }
    return topic.title;
}

namespace detail {

inline std::string xml_unescape(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        if (text[i] != '&') {
            out.push_back(text[i++]);
            continue;
        }
        std::size_t semi = text.find(';', i + 1);
        if (semi == std::string_view::npos || semi - i > 8) {
            out.push_back(text[i++]);
            continue;
        }
        std::string_view body = text.substr(i + 1, semi - i - 1);
        if (body == "amp") out.push_back('&');
        else if (body == "lt") out.push_back('<');
        else if (body == "gt") out.push_back('>');
        else if (body == "quot") out.push_back('"');
        else if (body == "apos") out.push_back('\'');
        else {
            out.push_back(text[i++]);
            continue;
        }
        i = semi + 1;
    }
    return out;
}

inline std::string collapse_whitespace(std::string_view text) {
    std::string out;
    bool in_space = true;
    for (char c : text) {
        bool space = c == ' ' || c == '\t' || c == '\n' || c == '\r';
        if (space) {
            if (!in_space) out.push_back(' ');
            in_space = true;
        } else {
            out.push_back(c);
            in_space = false;
        }
    }
    if (!out.empty() && out.back() == ' ') out.pop_back();
    return out;
}

// First <tag>...</tag> body inside the range, or empty.
inline std::string extract_element(std::string_view xml, std::string_view tag) {
    std::string open = "<" + std::string(tag);
    std::size_t pos = 0;
    while ((pos = xml.find(open, pos)) != std::string_view::npos) {
        std::size_t after = pos + open.size();
        if (after < xml.size() && (xml[after] == '>' || xml[after] == ' ')) {
            std::size_t body_start = xml.find('>', after);
            if (body_start == std::string_view::npos) return "";
            ++body_start;
            std::string close = "</" + std::string(tag) + ">";
            std::size_t body_end = xml.find(close, body_start);
            if (body_end == std::string_view::npos) return "";
            return collapse_whitespace(xml_unescape(xml.substr(body_start, body_end - body_start)));
        }
        pos = after;
    }
    return "";
}

} // namespace detail

// Lenient parse of a <topics> file: every <topic> element yields one Topic.
// Topics without an id are skipped (reported via the optional warning list).
inline std::vector<Topic> parse_topics(std::string_view xml,
                                       std::vector<std::string>* warnings = nullptr) {
    std::vector<Topic> topics;
    std::size_t pos = 0;
    while ((pos = xml.find("<topic", pos)) != std::string_view::npos) {
        std::size_t after = pos + 6;
        if (after < xml.size() && xml[after] != '>' && xml[after] != ' ') {
            pos = after; // e.g. <topics>
            continue;
        }
        std::size_t end = xml.find("</topic>", pos);
        if (end == std::string_view::npos) break;
        std::string_view body = xml.substr(pos, end - pos);
        Topic topic;
        topic.id = detail::extract_element(body, "id");
        topic.discharge_summary = detail::extract_element(body, "discharge_summary");
        topic.title = detail::extract_element(body, "title");
        topic.desc = detail::extract_element(body, "desc");
        topic.profile = detail::extract_element(body, "profile");
        topic.narr = detail::extract_element(body, "narr");
        if (topic.id.empty()) {
            if (warnings) warnings->push_back("topic without id skipped");
        } else {
            topics.push_back(std::move(topic));
        }
        pos = end + 8;
    }
    return topics;
}

inline std::vector<Topic> parse_topics_file(const std::filesystem::path& path,
                                            std::vector<std::string>* warnings = nullptr) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open topics file: " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    std::string data = buffer.str();
    return parse_topics(data, warnings);
}

} // namespace medir

#endif
