#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "colorfix/coloring.hpp"
#include "colorfix/flaws.hpp"

namespace colorfix {

enum class TranscriptMode : std::uint8_t { kOff, kRaw, kCompressed };

TranscriptMode transcript_mode_from_string(const std::string& s);
std::string to_string(TranscriptMode mode);

// One record of the run log.  Per repair call the log contains, in order:
//   Colours   -- the colors of N_v *before* this call's redraw, either listed
//                verbatim in neighbor label order (raw) or as a 1-based rank
//                in the canonical enumeration of flawed neighborhood
//                colorings (compressed);
//   FixCall   -- one per child call, written by the parent before recursing:
//                the child flaw's kind plus the 1-based position of its
//                vertex in the sorted radius-3 ball of the parent's vertex;
//   Return    -- written when the call's frame pops.
// The top-level flaw itself lives in the segment header, so a segment with t
// redraws has exactly t Colours records, t-1 FixCall records, and t Returns.
struct TranscriptRecord {
  enum class Type : std::uint8_t { kColours, kFixCall, kReturn };
  Type type = Type::kReturn;

  // kColours
  std::vector<Color> raw;   // raw mode; kBlank entries serialize as null
  long long index = -1;     // compressed mode; -1 when raw

  // kFixCall
  FlawKind kind = FlawKind::kB;
  long long ell = 0;  // omega index, 1-based

  static TranscriptRecord colours_raw(std::vector<Color> colors) {
    TranscriptRecord r;
    r.type = Type::kColours;
    r.raw = std::move(colors);
    return r;
  }
  static TranscriptRecord colours_compressed(long long index) {
    TranscriptRecord r;
    r.type = Type::kColours;
    r.index = index;
    return r;
  }
  static TranscriptRecord fix_call(FlawKind kind, long long ell) {
    TranscriptRecord r;
    r.type = Type::kFixCall;
    r.kind = kind;
    r.ell = ell;
    return r;
  }
  static TranscriptRecord ret() { return TranscriptRecord{}; }
};

// Log of one top-level repair call.
struct CallSegment {
  Flaw root{FlawKind::kB, 0};
  long long executions = 0;  // number of redraws in this call tree
  std::vector<TranscriptRecord> records;
};

// Log of a whole run (one segment per top-level call, in call order).
struct Transcript {
  TranscriptMode mode = TranscriptMode::kRaw;
  Variant variant = Variant::kTriangleFree;
  Vertex n = 0;

  std::vector<CallSegment> segments;

  long long total_executions() const;

  // JSON-lines serialization; each segment is a header line followed by its
  // record lines.  Parsing validates structure (header first, known types)
  // but leaves semantic validation to reconstruction.
  std::string to_jsonl() const;
  void write_jsonl(std::ostream& os) const;
  static Transcript from_jsonl(std::istream& is);
  static Transcript from_jsonl_string(const std::string& text);

  long long bit_size() const;  // 8 * serialized byte length
};

}  // namespace colorfix
