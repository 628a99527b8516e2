#include "jamfield/wav.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "jamfield/errors.hpp"
#include "jamfield/util.hpp"

namespace jamfield {

namespace {

void put_u32(std::string& out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}
void put_u16(std::string& out, uint16_t v) {
  out.push_back(static_cast<char>(v & 0xff));
  out.push_back(static_cast<char>((v >> 8) & 0xff));
}
uint32_t get_u32(const std::string& s, std::size_t at) {
  uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | static_cast<unsigned char>(s[at + i]);
  return v;
}
uint16_t get_u16(const std::string& s, std::size_t at) {
  return static_cast<uint16_t>(static_cast<unsigned char>(s[at]) |
                               (static_cast<unsigned char>(s[at + 1]) << 8));
}

}  // namespace

std::string wav_bytes(const SampledSignal& s, WavEncoding enc) {
  const uint32_t n = static_cast<uint32_t>(s.samples.size());
  const uint16_t bytes_per = enc == WavEncoding::pcm16 ? 2 : 4;
  const uint32_t data_bytes = n * bytes_per;
  const uint32_t rate = static_cast<uint32_t>(std::lround(s.sample_rate));
  std::string out;
  out.reserve(44 + data_bytes);
  out += "RIFF";
  put_u32(out, 36 + data_bytes);
  out += "WAVEfmt ";
  put_u32(out, 16);
  put_u16(out, enc == WavEncoding::pcm16 ? 1 : 3);  // PCM / IEEE float
  put_u16(out, 1);                                  // mono
  put_u32(out, rate);
  put_u32(out, rate * bytes_per);
  put_u16(out, bytes_per);
  put_u16(out, enc == WavEncoding::pcm16 ? 16 : 32);
  out += "data";
  put_u32(out, data_bytes);
  if (enc == WavEncoding::pcm16) {
    for (double v : s.samples) {
      const double c = std::clamp(v, -1.0, 1.0);
      const int16_t q = static_cast<int16_t>(std::lround(c * 32767.0));
      put_u16(out, static_cast<uint16_t>(q));
    }
  } else {
    for (double v : s.samples) {
      const float f = static_cast<float>(v);
      uint32_t bits;
      std::memcpy(&bits, &f, 4);
      put_u32(out, bits);
    }
  }
  return out;
}

void write_wav(const std::string& path, const SampledSignal& s, WavEncoding enc) {
  write_file_atomic(path, wav_bytes(s, enc));
}

SampledSignal read_wav(const std::string& path) {
  const std::string b = read_file(path);
  if (b.size() < 44 || b.compare(0, 4, "RIFF") != 0 || b.compare(8, 4, "WAVE") != 0)
    throw SchemaError("not a WAV file: " + path);
  std::size_t at = 12;
  uint16_t fmt = 0, channels = 0, bits = 0;
  uint32_t rate = 0;
  SampledSignal out;
  bool have_fmt = false;
  while (at + 8 <= b.size()) {
    const std::string id = b.substr(at, 4);
    const uint32_t len = get_u32(b, at + 4);
    if (at + 8 + len > b.size()) throw SchemaError("truncated WAV chunk: " + path);
    if (id == "fmt ") {
      fmt = get_u16(b, at + 8);
      channels = get_u16(b, at + 10);
      rate = get_u32(b, at + 12);
      bits = get_u16(b, at + 22);
      have_fmt = true;
    } else if (id == "data") {
      if (!have_fmt) throw SchemaError("WAV data before fmt: " + path);
      if (channels != 1) throw SchemaError("only mono WAV is supported: " + path);
      out.sample_rate = rate;
      if (fmt == 1 && bits == 16) {
        const std::size_t n = len / 2;
        out.samples.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
          const int16_t q = static_cast<int16_t>(get_u16(b, at + 8 + 2 * i));
          out.samples[i] = q / 32767.0;
        }
      } else if (fmt == 3 && bits == 32) {
        const std::size_t n = len / 4;
        out.samples.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
          const uint32_t v = get_u32(b, at + 8 + 4 * i);
          float f;
          std::memcpy(&f, &v, 4);
          out.samples[i] = f;
        }
      } else {
        throw SchemaError("unsupported WAV encoding: " + path);
      }
      return out;
    }
    at += 8 + len + (len & 1);
  }
  throw SchemaError("WAV file has no data chunk: " + path);
}

}  // namespace jamfield
