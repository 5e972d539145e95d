#ifndef MEDIR_CORPUS_HPP
#define MEDIR_CORPUS_HPP

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "errors.hpp"

namespace medir {

struct RawDocument {
    std::string uid;
    std::string date;
    std::string url;
    std::string raw_content; // byte-exact span between the content marker and the end marker
    std::size_t offset = 0;  // byte offset of the record start within its source
};

struct Document {
    std::string uid;
    std::string url;
    std::string text;
};

enum class CorpusIssueKind { MalformedRecord, DuplicateUid };

struct CorpusIssue {
    CorpusIssueKind kind = CorpusIssueKind::MalformedRecord;
    std::size_t offset = 0;
    std::string last_good_uid;
    std::string detail;
};

struct CorpusParseResult {
    std::vector<RawDocument> documents;
    std::vector<CorpusIssue> issues;
};

// Replaces every byte that is not part of a well-formed UTF-8 sequence with
// U+FFFD. Overlong encodings, surrogates and out-of-range code points count
// as malformed.
inline std::string sanitize_utf8(std::string_view input) {
    static const char replacement[] = "\xEF\xBF\xBD";
    std::string out;
    out.reserve(input.size());
    std::size_t i = 0;
    while (i < input.size()) {
        unsigned char lead = static_cast<unsigned char>(input[i]);
        std::size_t len = 0;
        std::uint32_t cp = 0;
        if (lead < 0x80) {
            out.push_back(static_cast<char>(lead));
            ++i;
            continue;
        } else if ((lead & 0xE0) == 0xC0) {
            len = 2;
            cp = lead & 0x1Fu;
        } else if ((lead & 0xF0) == 0xE0) {
            len = 3;
            cp = lead & 0x0Fu;
        } else if ((lead & 0xF8) == 0xF0) {
            len = 4;
            cp = lead & 0x07u;
        } else {
            out.append(replacement);
            ++i;
            continue;
        }
        if (i + len > input.size()) {
            out.append(replacement);
            ++i;
            continue;
        }
        bool ok = true;
        for (std::size_t k = 1; k < len; ++k) {
            unsigned char c = static_cast<unsigned char>(input[i + k]);
            if ((c & 0xC0) != 0x80) {
                ok = false;
                break;
            }
            cp = (cp << 6) | (c & 0x3Fu);
        }
        if (ok) {
            if (len == 2 && cp < 0x80) ok = false;
            if (len == 3 && cp < 0x800) ok = false;
            if (len == 4 && cp < 0x10000) ok = false;
            if (cp >= 0xD800 && cp <= 0xDFFF) ok = false;
            if (cp > 0x10FFFF) ok = false;
        }
        if (ok) {
            out.append(input.substr(i, len));
            i += len;
        } else {
            out.append(replacement);
            ++i;
        }
    }
    return out;
}

namespace detail {

inline bool is_marker_line(std::string_view line, std::string_view marker) {
    return line.size() >= marker.size() && line.substr(0, marker.size()) == marker;
}

inline std::string trim_field(std::string_view value) {
    std::size_t begin = 0;
    std::size_t end = value.size();
    while (begin < end && (value[begin] == ' ' || value[begin] == '\t' || value[begin] == '\r')) ++begin;
    while (end > begin && (value[end - 1] == ' ' || value[end - 1] == '\t' || value[end - 1] == '\r')) --end;
    return std::string(value.substr(begin, end - begin));
}

// Splits raw bytes into lines, keeping the byte offset of each line start.
// The terminator (LF or CRLF) is not part of the returned view.
struct LineCursor {
    std::string_view data;
    std::size_t pos = 0;

    bool next(std::string_view& line, std::size_t& line_start) {
        if (pos >= data.size()) return false;
        line_start = pos;
        std::size_t eol = data.find('\n', pos);
        if (eol == std::string_view::npos) {
            line = data.substr(pos);
            pos = data.size();
        } else {
            line = data.substr(pos, eol - pos);
            pos = eol + 1;
        }
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        return true;
    }
};

} // namespace detail

// Parses the marker-delimited record stream: each record is a #UID: line,
// a #DATE: line, a #URL: line, a #CONTENT: line, the raw content bytes, and
// a terminating #EOF line. Malformed records are reported and skipped; the
// scan resynchronizes at the next #UID: line. Duplicate uids keep the first
// occurrence. Header fields are UTF-8 sanitized; raw content is untouched.
inline CorpusParseResult parse_corpus(std::string_view data) {
    CorpusParseResult result;
    std::unordered_set<std::string> seen;
    std::string last_good_uid;

    detail::LineCursor cursor{data};
    std::string_view line;
    std::size_t line_start = 0;
    bool have_line = cursor.next(line, line_start);

    auto report = [&](std::size_t offset, const std::string& detail_text) {
        result.issues.push_back({CorpusIssueKind::MalformedRecord, offset, last_good_uid, detail_text});
    };

    while (have_line) {
        if (!detail::is_marker_line(line, "#UID:")) {
            if (!detail::trim_field(line).empty())
                report(line_start, "expected #UID: marker");
            while ((have_line = cursor.next(line, line_start)))
                if (detail::is_marker_line(line, "#UID:")) break;
            continue;
        }

        RawDocument doc;
        doc.offset = line_start;
        doc.uid = sanitize_utf8(detail::trim_field(line.substr(5)));

        bool malformed = false;
        auto read_header = [&](std::string_view marker, std::string& field) {
            if (malformed) return;
            if (!(have_line = cursor.next(line, line_start)) || !detail::is_marker_line(line, marker)) {
                report(doc.offset, "missing " + std::string(marker) + " marker");
                malformed = true;
                return;
            }
            field = sanitize_utf8(detail::trim_field(line.substr(marker.size())));
        };
        read_header("#DATE:", doc.date);
        read_header("#URL:", doc.url);

        std::size_t content_begin = 0;
        if (!malformed) {
            if (!(have_line = cursor.next(line, line_start)) || !detail::is_marker_line(line, "#CONTENT:")) {
                report(doc.offset, "missing #CONTENT: marker");
                malformed = true;
            } else {
                content_begin = line_start + std::string_view("#CONTENT:").size();
            }
        }

        if (!malformed) {
            bool terminated = false;
            while ((have_line = cursor.next(line, line_start))) {
                if (detail::is_marker_line(line, "#EOF") && detail::trim_field(line.substr(4)).empty()) {
                    terminated = true;
                    break;
                }
                if (detail::is_marker_line(line, "#UID:")) break;
            }
            if (!terminated) {
                report(doc.offset, "record not terminated by #EOF");
                malformed = true;
                // leave the current line (possibly a fresh #UID:) for resync
            } else {
                doc.raw_content = std::string(data.substr(content_begin, line_start - content_begin));
                have_line = cursor.next(line, line_start);
            }
        }

        if (malformed) {
            if (have_line && !detail::is_marker_line(line, "#UID:"))
                while ((have_line = cursor.next(line, line_start)))
                    if (detail::is_marker_line(line, "#UID:")) break;
            continue;
        }

        if (doc.uid.empty()) {
            report(doc.offset, "empty uid");
            continue;
        }
        if (seen.insert(doc.uid).second) {
            last_good_uid = doc.uid;
            result.documents.push_back(std::move(doc));
        } else {
            result.issues.push_back({CorpusIssueKind::DuplicateUid, doc.offset, last_good_uid,
                                     "duplicate uid " + doc.uid + ", keeping first occurrence"});
        }
    }
    return result;
}

inline CorpusParseResult parse_corpus_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open corpus file: " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    std::string data = buffer.str();
    return parse_corpus(data);
}

// Loads one or more corpus files in lexicographic path order. Duplicate uids
// across files keep the first occurrence, as within a single file.
inline CorpusParseResult load_corpus_files(std::vector<std::filesystem::path> paths) {
    std::sort(paths.begin(), paths.end(),
              [](const auto& a, const auto& b) { return a.generic_string() < b.generic_string(); });
    CorpusParseResult merged;
    std::unordered_set<std::string> seen;
    for (const auto& path : paths) {
        CorpusParseResult one = parse_corpus_file(path);
        for (auto& doc : one.documents) {
            if (seen.insert(doc.uid).second) {
                merged.documents.push_back(std::move(doc));
            } else {
                merged.issues.push_back({CorpusIssueKind::DuplicateUid, doc.offset, "",
                                         "duplicate uid across files: " + doc.uid});
            }
        }
        for (auto& issue : one.issues) merged.issues.push_back(std::move(issue));
    }
    return merged;
}

namespace detail {

inline bool iequals(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::tolower(static_cast<unsigned char>(a[i])) != std::tolower(static_cast<unsigned char>(b[i])))
            return false;
    return true;
}

inline void append_codepoint_utf8(std::uint32_t cp, std::string& out) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

// Decodes one entity starting at '&'. Entities that would produce '<' are
// left undecoded so stripped output can never reintroduce a tag opener.
inline std::size_t decode_entity(std::string_view text, std::size_t pos, std::string& out) {
    std::size_t semi = text.find(';', pos + 1);
    if (semi == std::string_view::npos || semi - pos > 12 || semi == pos + 1) {
        out.push_back('&');
        return pos + 1;
    }
    std::string_view body = text.substr(pos + 1, semi - pos - 1);
    std::uint32_t cp = 0;
    bool numeric = false;
    if (body.size() >= 2 && body[0] == '#') {
        numeric = true;
        std::size_t i = 1;
        bool hex = body[1] == 'x' || body[1] == 'X';
        if (hex) i = 2;
        if (i >= body.size()) numeric = false;
        for (; numeric && i < body.size(); ++i) {
            char c = body[i];
            std::uint32_t digit;
            if (c >= '0' && c <= '9') digit = static_cast<std::uint32_t>(c - '0');
            else if (hex && c >= 'a' && c <= 'f') digit = static_cast<std::uint32_t>(c - 'a' + 10);
            else if (hex && c >= 'A' && c <= 'F') digit = static_cast<std::uint32_t>(c - 'A' + 10);
            else { numeric = false; break; }
            cp = cp * (hex ? 16u : 10u) + digit;
            if (cp > 0x10FFFF) { numeric = false; break; }
        }
        if (numeric && (cp == 0 || (cp >= 0xD800 && cp <= 0xDFFF))) numeric = false;
    }
    if (numeric) {
        bool opens_tag_after_lt =
            !out.empty() && out.back() == '<' &&
            ((cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z') || cp == '/' ||
             cp == '!' || cp == '?');
        if (cp == '<' || opens_tag_after_lt) {
            out.append(text.substr(pos, semi - pos + 1));
        } else {
            append_codepoint_utf8(cp, out);
        }
        return semi + 1;
    }
    if (body == "amp") out.push_back('&');
    else if (body == "gt") out.push_back('>');
    else if (body == "quot") out.push_back('"');
    else if (body == "apos") out.push_back('\'');
    else if (body == "nbsp") out.push_back(' ');
    else if (body == "lt") out.append(text.substr(pos, semi - pos + 1));
    else {
        out.push_back('&');
        return pos + 1;
    }
    return semi + 1;
}

} // namespace detail

// Lenient HTML to text: tags become spaces, comments and script/style and
// CDATA bodies are dropped, common entities are decoded, and whitespace is
// collapsed. Never throws; arbitrary byte junk degrades to text.
inline std::string strip_html(std::string_view html) {
    std::string text;
    text.reserve(html.size());
    std::size_t i = 0;
    auto starts_with = [&](std::string_view prefix) {
        return html.size() - i >= prefix.size() && html.substr(i, prefix.size()) == prefix;
    };
    while (i < html.size()) {
        char c = html[i];
        if (c == '&') {
            i = detail::decode_entity(html, i, text);
            continue;
        }
        if (c != '<') {
            text.push_back(c);
            ++i;
            continue;
        }
        if (i + 1 >= html.size()) {
            text.push_back('<');
            ++i;
            continue;
        }
        char next = html[i + 1];
        bool tagish = (next >= 'a' && next <= 'z') || (next >= 'A' && next <= 'Z') ||
                      next == '/' || next == '!' || next == '?';
        if (!tagish) {
            text.push_back('<');
            ++i;
            continue;
        }
        if (starts_with("<!--")) {
            std::size_t end = html.find("-->", i + 4);
            i = end == std::string_view::npos ? html.size() : end + 3;
            text.push_back(' ');
            continue;
        }
        if (starts_with("<![CDATA[")) {
            std::size_t end = html.find("]]>", i + 9);
            i = end == std::string_view::npos ? html.size() : end + 3;
            text.push_back(' ');
            continue;
        }
        // Scan the tag, honoring quoted attribute values.
        std::size_t p = i + 1;
        std::size_t name_end = p;
        while (name_end < html.size()) {
            char nc = html[name_end];
            if ((nc >= 'a' && nc <= 'z') || (nc >= 'A' && nc <= 'Z') || (nc >= '0' && nc <= '9'))
                ++name_end;
            else
                break;
        }
        std::string_view tag_name = html.substr(p, name_end - p);
        char quote = 0;
        std::size_t close = std::string_view::npos;
        for (std::size_t t = p; t < html.size(); ++t) {
            char tc = html[t];
            if (quote != 0) {
                if (tc == quote) quote = 0;
            } else if (tc == '"' || tc == '\'') {
                quote = tc;
            } else if (tc == '>') {
                close = t;
                break;
            }
        }
        bool self_closing = close != std::string_view::npos && close > i && html[close - 1] == '/';
        i = close == std::string_view::npos ? html.size() : close + 1;
        text.push_back(' ');
        if (!self_closing &&
            (detail::iequals(tag_name, "script") || detail::iequals(tag_name, "style"))) {
            std::string closer = "</";
            closer.append(tag_name.begin(), tag_name.end());
            std::size_t body_end = std::string_view::npos;
            for (std::size_t t = i; t + closer.size() <= html.size(); ++t) {
                if (detail::iequals(html.substr(t, closer.size()), closer)) {
                    body_end = t;
                    break;
                }
            }
            if (body_end == std::string_view::npos) {
                i = html.size();
            } else {
                std::size_t gt = html.find('>', body_end);
                i = gt == std::string_view::npos ? html.size() : gt + 1;
            }
        }
    }

    std::string collapsed;
    collapsed.reserve(text.size());
    bool in_space = true;
    for (char c : text) {
        bool space = c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
        if (space) {
            if (!in_space) collapsed.push_back(' ');
            in_space = true;
        } else {
            collapsed.push_back(c);
            in_space = false;
        }
    }
    if (!collapsed.empty() && collapsed.back() == ' ') collapsed.pop_back();
    return collapsed;
}

inline Document extract_text(const RawDocument& raw) {
    Document doc;
    doc.uid = raw.uid;
    doc.url = raw.url;
    doc.text = strip_html(sanitize_utf8(raw.raw_content));
    return doc;
}

inline std::vector<Document> extract_all(const std::vector<RawDocument>& raws) {
    std::vector<Document> docs;
    docs.reserve(raws.size());
    for (const auto& raw : raws) docs.push_back(extract_text(raw));
    return docs;
}

} // namespace medir

#endif
