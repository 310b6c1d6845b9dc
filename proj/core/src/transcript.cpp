#include "colorfix/transcript.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "colorfix/errors.hpp"

namespace colorfix {

using json = nlohmann::ordered_json;

TranscriptMode transcript_mode_from_string(const std::string& s) {
  if (s == "off") return TranscriptMode::kOff;
  if (s == "raw") return TranscriptMode::kRaw;
  if (s == "compressed") return TranscriptMode::kCompressed;
  throw InvalidArgument("unknown transcript mode: " + s);
}

std::string to_string(TranscriptMode mode) {
  switch (mode) {
    case TranscriptMode::kOff: return "off";
    case TranscriptMode::kRaw: return "raw";
    case TranscriptMode::kCompressed: return "compressed";
  }
  return "?";
}

namespace {

const char* kind_tag(FlawKind k) { return k == FlawKind::kB ? "B" : "Z"; }

FlawKind kind_from_tag(const std::string& s) {
  if (s == "B") return FlawKind::kB;
  if (s == "Z") return FlawKind::kZ;
  throw TranscriptError("unknown flaw kind tag: " + s);
}

const char* variant_tag(Variant v) {
  return v == Variant::kTriangleFree ? "tf" : "kr";
}

Variant variant_from_tag(const std::string& s) {
  if (s == "tf") return Variant::kTriangleFree;
  if (s == "kr") return Variant::kCliqueFree;
  throw TranscriptError("unknown variant tag: " + s);
}

}  // namespace

long long Transcript::total_executions() const {
  long long t = 0;
  for (const CallSegment& seg : segments) t += seg.executions;
  return t;
}

void Transcript::write_jsonl(std::ostream& os) const {
  for (const CallSegment& seg : segments) {
    json header;
    header["type"] = "header";
    header["mode"] = to_string(mode);
    header["variant"] = variant_tag(variant);
    header["n"] = n;
    header["kind"] = kind_tag(seg.root.kind);
    header["vertex"] = seg.root.vertex;
    header["executions"] = seg.executions;
    os << header.dump() << '\n';
    for (const TranscriptRecord& rec : seg.records) {
      json line;
      switch (rec.type) {
        case TranscriptRecord::Type::kColours:
          line["type"] = "colours";
          if (rec.index >= 0) {
            line["index"] = rec.index;
          } else {
            json arr = json::array();
            for (Color c : rec.raw) {
              if (c == kBlank) {
                arr.push_back(nullptr);
              } else {
                arr.push_back(c);
              }
            }
            line["raw"] = std::move(arr);
          }
          break;
        case TranscriptRecord::Type::kFixCall:
          line["type"] = "call";
          line["kind"] = kind_tag(rec.kind);
          line["ell"] = rec.ell;
          break;
        case TranscriptRecord::Type::kReturn:
          line["type"] = "return";
          break;
      }
      os << line.dump() << '\n';
    }
  }
}

std::string Transcript::to_jsonl() const {
  std::ostringstream oss;
  write_jsonl(oss);
  return oss.str();
}

Transcript Transcript::from_jsonl(std::istream& is) {
  Transcript t;
  t.segments.clear();
  bool saw_header = false;
  std::string line;
  long long lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw TranscriptError("line " + std::to_string(lineno) + ": " + e.what());
    }
    try {
      const std::string type = j.at("type").get<std::string>();
      if (type == "header") {
        CallSegment seg;
        seg.root.kind = kind_from_tag(j.at("kind").get<std::string>());
        seg.root.vertex = j.at("vertex").get<Vertex>();
        seg.executions = j.at("executions").get<long long>();
        if (!saw_header) {
          t.mode = transcript_mode_from_string(j.at("mode").get<std::string>());
          t.variant = variant_from_tag(j.at("variant").get<std::string>());
          t.n = j.at("n").get<Vertex>();
          saw_header = true;
        }
        t.segments.push_back(std::move(seg));
        continue;
      }
      if (!saw_header) {
        throw TranscriptError("record before first header");
      }
      CallSegment& seg = t.segments.back();
      if (type == "colours") {
        if (j.contains("index")) {
          long long idx = j.at("index").get<long long>();
          if (idx < 1) throw TranscriptError("colours index must be >= 1");
          seg.records.push_back(TranscriptRecord::colours_compressed(idx));
        } else {
          std::vector<Color> colors;
          for (const auto& item : j.at("raw")) {
            colors.push_back(item.is_null() ? kBlank : item.get<Color>());
          }
          seg.records.push_back(TranscriptRecord::colours_raw(std::move(colors)));
        }
      } else if (type == "call") {
        FlawKind k = kind_from_tag(j.at("kind").get<std::string>());
        long long ell = j.at("ell").get<long long>();
        if (ell < 1) throw TranscriptError("call ell must be >= 1");
        seg.records.push_back(TranscriptRecord::fix_call(k, ell));
      } else if (type == "return") {
        seg.records.push_back(TranscriptRecord::ret());
      } else {
        throw TranscriptError("unknown record type: " + type);
      }
    } catch (const json::exception& e) {
      throw TranscriptError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return t;
}

Transcript Transcript::from_jsonl_string(const std::string& text) {
  std::istringstream iss(text);
  return from_jsonl(iss);
}

long long Transcript::bit_size() const {
  return static_cast<long long>(to_jsonl().size()) * 8;
}

}  // namespace colorfix
