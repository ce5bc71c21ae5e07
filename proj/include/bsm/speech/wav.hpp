// bsm/speech/wav.hpp

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BSM_SPEECH_WAV_HPP
#define BSM_SPEECH_WAV_HPP

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "bsm/core/common.hpp"

namespace bsm::speech {

constexpr int kExpectedSampleRate = 16000;

/// Mono speech recording with samples scaled to [-1, 1].
struct SpeechRecording {
  std::vector<double> samples;
  double sample_rate = kExpectedSampleRate;
  std::string subject_id;
  std::string task;

  double duration() const {
    return static_cast<double>(samples.size()) / sample_rate;
  }

  void validate_for_features() const {
    require(sample_rate > 0.0, "SpeechRecording: non-positive sample rate");
    require(duration() >= 0.5,
            "SpeechRecording: shorter than 0.5 s, too short for features");
    require(all_finite(samples), "SpeechRecording: non-finite samples");
  }
};

namespace detail {

inline std::uint32_t read_u32(std::istream& is) {
  unsigned char b[4];
  is.read(reinterpret_cast<char*>(b), 4);
  return static_cast<std::uint32_t>(b[0]) |
         (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) |
         (static_cast<std::uint32_t>(b[3]) << 24);
}

inline std::uint16_t read_u16(std::istream& is) {
  unsigned char b[2];
  is.read(reinterpret_cast<char*>(b), 2);
  return static_cast<std::uint16_t>(b[0] |
                                    (static_cast<std::uint16_t>(b[1]) << 8));
}

inline void write_u32(std::ostream& os, std::uint32_t v) {
  const char b[4] = {static_cast<char>(v & 0xff),
                     static_cast<char>((v >> 8) & 0xff),
                     static_cast<char>((v >> 16) & 0xff),
                     static_cast<char>((v >> 24) & 0xff)};
  os.write(b, 4);
}

inline void write_u16(std::ostream& os, std::uint16_t v) {
  const char b[2] = {static_cast<char>(v & 0xff),
                     static_cast<char>((v >> 8) & 0xff)};
  os.write(b, 2);
}

}  // namespace detail

/// Reads a PCM 16-bit mono WAV file. Refuses other encodings, channel
/// counts, and (when `require_rate` > 0) sample rates; no silent resampling.
inline SpeechRecording read_wav(const std::string& path,
                                int require_rate = kExpectedSampleRate) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ValidationError("cannot open '" + path + "'");
  char riff[4], wave[4];
  is.read(riff, 4);
  detail::read_u32(is);  // overall size
  is.read(wave, 4);
  require(is.good() && std::string(riff, 4) == "RIFF" &&
              std::string(wave, 4) == "WAVE",
          "'" + path + "': not a RIFF/WAVE file");

  SpeechRecording rec;
  bool got_fmt = false, got_data = false;
  std::uint16_t channels = 0, bits = 0, format = 0;
  std::uint32_t rate = 0;
  while (is && !(got_fmt && got_data)) {
    char id[4];
    is.read(id, 4);
    if (!is) break;
    const std::uint32_t size = detail::read_u32(is);
    const std::string chunk(id, 4);
    if (chunk == "fmt ") {
      format = detail::read_u16(is);
      channels = detail::read_u16(is);
      rate = detail::read_u32(is);
      detail::read_u32(is);  // byte rate
      detail::read_u16(is);  // block align
      bits = detail::read_u16(is);
      if (size > 16) is.ignore(size - 16);
      got_fmt = true;
    } else if (chunk == "data") {
      require(got_fmt, "'" + path + "': data chunk before fmt");
      require(format == 1, "'" + path + "': only PCM WAV is supported");
      require(channels == 1, "'" + path + "': only mono WAV is supported");
      require(bits == 16, "'" + path + "': only 16-bit WAV is supported");
      const std::size_t n = size / 2;
      rec.samples.resize(n);
      for (std::size_t i = 0; i < n; ++i) {
        const std::uint16_t raw = detail::read_u16(is);
        rec.samples[i] =
            static_cast<double>(static_cast<std::int16_t>(raw)) / 32768.0;
      }
      got_data = true;
    } else {
      is.ignore(size + (size & 1));
    }
  }
  require(got_fmt && got_data, "'" + path + "': missing fmt or data chunk");
  rec.sample_rate = static_cast<double>(rate);
  if (require_rate > 0)
    require(rate == static_cast<std::uint32_t>(require_rate),
            "'" + path + "': sample rate " + std::to_string(rate) +
                " Hz, expected " + std::to_string(require_rate) +
                " Hz (resampling is refused)");
  return rec;
}

/// Writes a PCM 16-bit mono WAV file; samples are clipped to [-1, 1].
inline void write_wav(const std::string& path,
                      const std::vector<double>& samples, int sample_rate) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ValidationError("cannot open '" + path + "' for writing");
  const std::uint32_t data_bytes = static_cast<std::uint32_t>(samples.size() * 2);
  os.write("RIFF", 4);
  detail::write_u32(os, 36 + data_bytes);
  os.write("WAVE", 4);
  os.write("fmt ", 4);
  detail::write_u32(os, 16);
  detail::write_u16(os, 1);  // PCM
  detail::write_u16(os, 1);  // mono
  detail::write_u32(os, static_cast<std::uint32_t>(sample_rate));
  detail::write_u32(os, static_cast<std::uint32_t>(sample_rate * 2));
  detail::write_u16(os, 2);
  detail::write_u16(os, 16);
  os.write("data", 4);
  detail::write_u32(os, data_bytes);
  for (double s : samples) {
    double v = s;
    if (v > 1.0) v = 1.0;
    if (v < -1.0) v = -1.0;
    const auto q = static_cast<std::int16_t>(std::lround(v * 32767.0));
    detail::write_u16(os, static_cast<std::uint16_t>(q));
  }
  if (!os) throw ValidationError("write failed for '" + path + "'");
}

}  // namespace bsm::speech

#endif  // BSM_SPEECH_WAV_HPP
