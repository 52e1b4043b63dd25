#include "improvise/midi/smf.h"

#include <algorithm>
#include <cstring>

#include "improvise/error.h"
#include "improvise/midi/vlq.h"

namespace improvise::midi {

namespace {

constexpr std::uint8_t kMetaTempo = 0x51;
constexpr std::uint8_t kMetaEnd = 0x2F;

/// Bounds-checked cursor over a byte range; every overrun is a Truncated error.
class Reader {
 public:
  Reader(std::span<const std::uint8_t> bytes, const char* what) : bytes_(bytes), what_(what) {}

  bool done() const { return pos_ >= bytes_.size(); }
  std::size_t pos() const { return pos_; }

  std::uint8_t peek() const {
    need(1);
    return bytes_[pos_];
  }
  std::uint8_t u8() {
    need(1);
    return bytes_[pos_++];
  }
  std::uint16_t u16() {
    need(2);
    const auto v = static_cast<std::uint16_t>((bytes_[pos_] << 8) | bytes_[pos_ + 1]);
    pos_ += 2;
    return v;
  }
  std::uint32_t u32() {
    need(4);
    const std::uint32_t v = (std::uint32_t{bytes_[pos_]} << 24) | (std::uint32_t{bytes_[pos_ + 1]} << 16) |
                            (std::uint32_t{bytes_[pos_ + 2]} << 8) | std::uint32_t{bytes_[pos_ + 3]};
    pos_ += 4;
    return v;
  }
  std::uint32_t vlq() {
    const auto r = decode_vlq(bytes_.subspan(pos_));
    pos_ += r.consumed;
    return r.value;
  }
  std::span<const std::uint8_t> take(std::size_t n) {
    need(n);
    auto out = bytes_.subspan(pos_, n);
    pos_ += n;
    return out;
  }

 private:
  void need(std::size_t n) const {
    if (pos_ > bytes_.size() || bytes_.size() - pos_ < n) {
      throw Error(ErrorCode::Truncated, std::string("unexpected end of ") + what_);
    }
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
  const char* what_;
};

int channel_data_length(std::uint8_t status) {
  const auto type = status & 0xF0;
  return (type == 0xC0 || type == 0xD0) ? 1 : 2;
}

MidiEvent channel_event(std::uint8_t status, std::uint8_t d1, std::uint8_t d2, std::int64_t tick) {
  const int ch = status & 0x0F;
  switch (status & 0xF0) {
    case 0x90:
      return MidiEvent::note_on(ch, d1, d2, tick);  // velocity 0 normalises to NoteOff
    case 0x80:
      return MidiEvent::note_off(ch, d1, d2, tick);
    case 0xB0:
      return MidiEvent::control_change(ch, d1, d2, tick);
    case 0xC0:
      return MidiEvent::program_change(ch, d1, tick);
    default: {
      MidiEvent e;
      e.kind = EventKind::Other;
      e.status = status;
      e.channel = static_cast<std::uint8_t>(ch);
      e.tick = tick;
      e.payload.push_back(d1);
      if (channel_data_length(status) == 2) e.payload.push_back(d2);
      return e;
    }
  }
}

MidiTrack parse_track(std::span<const std::uint8_t> chunk) {
  Reader r(chunk, "track chunk");
  MidiTrack track;
  std::int64_t tick = 0;
  std::uint8_t running = 0;

  while (!r.done()) {
    tick += r.vlq();
    std::uint8_t status = r.peek();
    if (status & 0x80) {
      r.u8();
    } else {
      if (running == 0) throw Error(ErrorCode::MalformedTrack, "data byte without running status");
      status = running;
    }

    if (status == 0xFF) {
      running = 0;
      const std::uint8_t type = r.u8();
      const std::uint32_t len = r.vlq();
      const auto data = r.take(len);
      if (type == kMetaEnd) {
        track.events.push_back(MidiEvent::end_of_track(tick));
        return track;  // anything after end-of-track is ignored
      }
      if (type == kMetaTempo && len == 3) {
        track.events.push_back(
            MidiEvent::tempo((std::uint32_t{data[0]} << 16) | (std::uint32_t{data[1]} << 8) | data[2], tick));
      } else {
        MidiEvent e;
        e.kind = EventKind::Other;
        e.status = 0xFF;
        e.meta_type = type;
        e.payload.assign(data.begin(), data.end());
        e.tick = tick;
        track.events.push_back(std::move(e));
      }
    } else if (status == 0xF0 || status == 0xF7) {
      running = 0;
      const std::uint32_t len = r.vlq();
      const auto data = r.take(len);
      MidiEvent e;
      e.kind = EventKind::Other;
      e.status = status;
      e.payload.assign(data.begin(), data.end());
      e.tick = tick;
      track.events.push_back(std::move(e));
    } else if (status >= 0x80 && status < 0xF0) {
      running = status;
      const std::uint8_t d1 = r.u8();
      const std::uint8_t d2 = channel_data_length(status) == 2 ? r.u8() : 0;
      if ((d1 | d2) & 0x80) throw Error(ErrorCode::MalformedTrack, "status byte where data byte expected");
      track.events.push_back(channel_event(status, d1, d2, tick));
    } else {
      throw Error(ErrorCode::MalformedTrack, "invalid status byte in track");
    }
  }

  // Chunk ended without an end-of-track marker; close it at the last tick.
  track.events.push_back(MidiEvent::end_of_track(tick));
  return track;
}

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v & 0xFF));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>((v >> shift) & 0xFF));
}

void write_event(std::vector<std::uint8_t>& out, const MidiEvent& e) {
  switch (e.kind) {
    case EventKind::NoteOn:
      out.insert(out.end(), {static_cast<std::uint8_t>(0x90 | e.channel), e.data1, e.data2});
      break;
    case EventKind::NoteOff:
      out.insert(out.end(), {static_cast<std::uint8_t>(0x80 | e.channel), e.data1, e.data2});
      break;
    case EventKind::ControlChange:
      out.insert(out.end(), {static_cast<std::uint8_t>(0xB0 | e.channel), e.data1, e.data2});
      break;
    case EventKind::ProgramChange:
      out.insert(out.end(), {static_cast<std::uint8_t>(0xC0 | e.channel), e.data1});
      break;
    case EventKind::MetaTempo: {
      const auto t = e.tempo_us_per_quarter;
      out.insert(out.end(), {0xFF, kMetaTempo, 0x03, static_cast<std::uint8_t>((t >> 16) & 0xFF),
                             static_cast<std::uint8_t>((t >> 8) & 0xFF), static_cast<std::uint8_t>(t & 0xFF)});
      break;
    }
    case EventKind::MetaEnd:
      out.insert(out.end(), {0xFF, kMetaEnd, 0x00});
      break;
    case EventKind::Other:
      if (e.status == 0xFF) {
        out.push_back(0xFF);
        out.push_back(e.meta_type);
        append_vlq(out, static_cast<std::uint32_t>(e.payload.size()));
      } else if (e.status == 0xF0 || e.status == 0xF7) {
        out.push_back(e.status);
        append_vlq(out, static_cast<std::uint32_t>(e.payload.size()));
      } else if (e.status >= 0x80 && e.status < 0xF0) {
        if (e.payload.size() != static_cast<std::size_t>(channel_data_length(e.status))) {
          throw Error(ErrorCode::InvalidArgument, "channel event with wrong data length");
        }
        out.push_back(e.status);
      } else {
        throw Error(ErrorCode::InvalidArgument, "event has no serializable status");
      }
      out.insert(out.end(), e.payload.begin(), e.payload.end());
      break;
  }
}

}  // namespace

MidiFile parse_smf(std::span<const std::uint8_t> bytes) {
  static constexpr std::uint8_t kMagic[4] = {'M', 'T', 'h', 'd'};
  const std::size_t prefix = std::min<std::size_t>(bytes.size(), 4);
  if (prefix == 0 || std::memcmp(bytes.data(), kMagic, prefix) != 0) {
    throw Error(ErrorCode::NotSmf, "missing MThd header");
  }

  Reader r(bytes, "file");
  r.take(4);
  const std::uint32_t header_len = r.u32();
  if (header_len < 6) throw Error(ErrorCode::NotSmf, "MThd chunk shorter than 6 bytes");
  const auto header = r.take(header_len);
  Reader h(header, "header");
  const int format = h.u16();
  const int ntracks = h.u16();
  const std::uint16_t division = h.u16();

  if (division & 0x8000) throw Error(ErrorCode::UnsupportedTimeDivision, "SMPTE time division is not supported");
  if (division == 0) throw Error(ErrorCode::UnsupportedTimeDivision, "zero ticks per quarter note");
  if (format != 0 && format != 1) {
    throw Error(ErrorCode::UnsupportedFormat, "SMF format " + std::to_string(format) + " is not supported");
  }
  if (format == 0 && ntracks != 1) {
    throw Error(ErrorCode::UnsupportedFormat, "format 0 file must contain exactly one track");
  }

  MidiFile file;
  file.format = format;
  file.ppq = division;
  while (static_cast<int>(file.tracks.size()) < ntracks) {
    if (r.done()) throw Error(ErrorCode::Truncated, "fewer track chunks than the header declares");
    const auto tag = r.take(4);
    const std::uint32_t len = r.u32();
    const auto body = r.take(len);
    if (std::memcmp(tag.data(), "MTrk", 4) != 0) continue;  // alien chunk
    file.tracks.push_back(parse_track(body));
  }
  return file;
}

std::vector<std::uint8_t> serialize_smf(const MidiFile& file) {
  if (file.format != 0 && file.format != 1) throw Error(ErrorCode::InvalidArgument, "format must be 0 or 1");
  if (file.format == 0 && file.tracks.size() != 1) {
    throw Error(ErrorCode::InvalidArgument, "format 0 requires exactly one track");
  }
  if (file.ppq <= 0 || file.ppq > 0x7FFF) throw Error(ErrorCode::InvalidArgument, "ppq out of range");
  if (file.tracks.size() > 0xFFFF) throw Error(ErrorCode::InvalidArgument, "too many tracks");

  std::vector<std::uint8_t> out = {'M', 'T', 'h', 'd'};
  put_u32(out, 6);
  put_u16(out, static_cast<std::uint16_t>(file.format));
  put_u16(out, static_cast<std::uint16_t>(file.tracks.size()));
  put_u16(out, static_cast<std::uint16_t>(file.ppq));

  for (const auto& track : file.tracks) {
    std::vector<std::uint8_t> body;
    std::int64_t prev = 0;
    std::int64_t end_tick = 0;
    for (const auto& e : track.events) {
      if (e.tick < prev) throw Error(ErrorCode::InvalidArgument, "track ticks must be non-decreasing");
      if (e.kind == EventKind::MetaEnd) {
        end_tick = e.tick;
        break;
      }
      append_vlq(body, static_cast<std::uint32_t>(e.tick - prev));
      write_event(body, e);
      prev = e.tick;
      end_tick = e.tick;
    }
    append_vlq(body, static_cast<std::uint32_t>(std::max(end_tick, prev) - prev));
    write_event(body, MidiEvent::end_of_track());

    out.insert(out.end(), {'M', 'T', 'r', 'k'});
    put_u32(out, static_cast<std::uint32_t>(body.size()));
    out.insert(out.end(), body.begin(), body.end());
  }
  return out;
}

std::vector<MidiEvent> merged_events(const MidiFile& file) {
  std::vector<MidiEvent> out;
  for (const auto& track : file.tracks) {
    for (const auto& e : track.events) {
      if (e.kind != EventKind::MetaEnd) out.push_back(e);
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const MidiEvent& a, const MidiEvent& b) { return a.tick < b.tick; });
  return out;
}

std::uint32_t first_tempo_us(const MidiFile& file) {
  std::int64_t best_tick = -1;
  std::uint32_t tempo = kDefaultTempoUs;
  for (const auto& track : file.tracks) {
    for (const auto& e : track.events) {
      if (e.kind == EventKind::MetaTempo && e.tempo_us_per_quarter > 0 && (best_tick < 0 || e.tick < best_tick)) {
        best_tick = e.tick;
        tempo = e.tempo_us_per_quarter;
        break;
      }
    }
  }
  return tempo;
}

std::int64_t duration_ticks(const MidiFile& file) {
  std::int64_t end = 0;
  for (const auto& track : file.tracks) {
    for (const auto& e : track.events) end = std::max(end, e.tick);
  }
  return end;
}

}  // namespace improvise::midi
