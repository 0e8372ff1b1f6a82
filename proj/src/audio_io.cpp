/* Copyright 2026 The scatser Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "scatser/audio_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <numeric>
#include <string>

#include "scatser/error.hpp"

namespace scatser {

namespace {

constexpr std::uint16_t kFormatPcm = 0x0001;
constexpr std::uint16_t kFormatFloat = 0x0003;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::uint16_t ReadU16(const unsigned char *p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t ReadU32(const unsigned char *p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

void PutU16(std::vector<unsigned char> *out, std::uint16_t v) {
  out->push_back(static_cast<unsigned char>(v & 0xFF));
  out->push_back(static_cast<unsigned char>(v >> 8));
}

void PutU32(std::vector<unsigned char> *out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i)
    out->push_back(static_cast<unsigned char>((v >> (8 * i)) & 0xFF));
}

void PutTag(std::vector<unsigned char> *out, const char *tag) {
  out->insert(out->end(), tag, tag + 4);
}

struct FmtChunk {
  std::uint16_t format = 0;
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t bits_per_sample = 0;
  std::uint16_t block_align = 0;
};

}  // namespace

Waveform::Waveform(std::vector<double> samples, int sample_rate_hz)
    : samples_(std::move(samples)), sample_rate_hz_(sample_rate_hz) {
  if (sample_rate_hz_ <= 0)
    throw Error(ErrorCode::kInvalidArgument, "sample rate must be positive");
  if (samples_.empty())
    throw Error(ErrorCode::kInvalidArgument, "waveform must be non-empty");
  for (double s : samples_) {
    if (!std::isfinite(s))
      throw Error(ErrorCode::kInvalidArgument, "waveform has non-finite sample");
  }
}

Waveform LoadWav(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kFileNotFound, path.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0)
    throw Error(ErrorCode::kCorruptHeader, path.string() + ": not RIFF/WAVE");

  FmtChunk fmt;
  bool have_fmt = false;
  const unsigned char *data = nullptr;
  std::size_t data_size = 0;
  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const unsigned char *chunk = bytes.data() + pos;
    std::uint32_t size = ReadU32(chunk + 4);
    std::size_t body = pos + 8;
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (size < 16 || body + size > bytes.size())
        throw Error(ErrorCode::kCorruptHeader, path.string() + ": short fmt chunk");
      const unsigned char *f = bytes.data() + body;
      fmt.format = ReadU16(f);
      fmt.channels = ReadU16(f + 2);
      fmt.sample_rate = ReadU32(f + 4);
      fmt.block_align = ReadU16(f + 12);
      fmt.bits_per_sample = ReadU16(f + 14);
      if (fmt.format == kFormatExtensible) {
        if (size < 40)
          throw Error(ErrorCode::kCorruptHeader,
                      path.string() + ": short extensible fmt chunk");
        // The first two bytes of the sub-format GUID carry the real format tag.
        fmt.format = ReadU16(f + 24);
      }
      have_fmt = true;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      data = bytes.data() + body;
      // Some writers leave the data size at 0 or 0xFFFFFFFF when streaming.
      data_size = std::min<std::size_t>(size, bytes.size() - body);
    }
    pos = body + size + (size & 1u);
  }
  if (!have_fmt || data == nullptr)
    throw Error(ErrorCode::kCorruptHeader, path.string() + ": missing fmt or data chunk");
  if (fmt.channels == 0 || fmt.sample_rate == 0)
    throw Error(ErrorCode::kCorruptHeader, path.string() + ": zero channels or rate");

  int bytes_per_sample = 0;
  if (fmt.format == kFormatPcm && fmt.bits_per_sample == 16) {
    bytes_per_sample = 2;
  } else if (fmt.format == kFormatFloat && fmt.bits_per_sample == 32) {
    bytes_per_sample = 4;
  } else {
    throw Error(ErrorCode::kUnsupportedEncoding,
                path.string() + ": format tag " + std::to_string(fmt.format) +
                    ", " + std::to_string(fmt.bits_per_sample) + " bits");
  }
  const std::size_t frame_bytes =
      static_cast<std::size_t>(bytes_per_sample) * fmt.channels;
  const std::size_t n_frames = data_size / frame_bytes;
  if (n_frames == 0)
    throw Error(ErrorCode::kCorruptHeader, path.string() + ": empty data chunk");

  std::vector<double> mono(n_frames, 0.0);
  for (std::size_t i = 0; i < n_frames; ++i) {
    const unsigned char *frame = data + i * frame_bytes;
    double acc = 0.0;
    for (int c = 0; c < fmt.channels; ++c) {
      const unsigned char *s = frame + c * bytes_per_sample;
      if (bytes_per_sample == 2) {
        acc += static_cast<std::int16_t>(ReadU16(s)) / 32768.0;
      } else {
        std::uint32_t bits = ReadU32(s);
        float v;
        std::memcpy(&v, &bits, sizeof v);
        acc += static_cast<double>(v);
      }
    }
    mono[i] = acc / fmt.channels;
  }
  return Waveform(std::move(mono), static_cast<int>(fmt.sample_rate));
}

void WriteWav(const std::filesystem::path &path, const Waveform &w,
              WavEncoding encoding) {
  const bool pcm = encoding == WavEncoding::kPcm16;
  const std::uint16_t bits = pcm ? 16 : 32;
  const std::uint32_t data_bytes =
      static_cast<std::uint32_t>(w.size() * (bits / 8));
  std::vector<unsigned char> out;
  out.reserve(44 + data_bytes);
  PutTag(&out, "RIFF");
  PutU32(&out, 36 + data_bytes);
  PutTag(&out, "WAVE");
  PutTag(&out, "fmt ");
  PutU32(&out, 16);
  PutU16(&out, pcm ? kFormatPcm : kFormatFloat);
  PutU16(&out, 1);
  PutU32(&out, static_cast<std::uint32_t>(w.sample_rate_hz()));
  PutU32(&out, static_cast<std::uint32_t>(w.sample_rate_hz()) * (bits / 8));
  PutU16(&out, bits / 8);
  PutU16(&out, bits);
  PutTag(&out, "data");
  PutU32(&out, data_bytes);
  for (double s : w.samples()) {
    if (pcm) {
      double q = std::clamp(std::round(s * 32768.0), -32768.0, 32767.0);
      PutU16(&out, static_cast<std::uint16_t>(static_cast<std::int16_t>(q)));
    } else {
      float f = static_cast<float>(s);
      std::uint32_t u;
      std::memcpy(&u, &f, sizeof u);
      PutU32(&out, u);
    }
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorCode::kFileNotFound, "cannot write " + path.string());
  os.write(reinterpret_cast<const char *>(out.data()),
           static_cast<std::streamsize>(out.size()));
}

Waveform Resample(const Waveform &w, int target_hz) {
  if (target_hz <= 0)
    throw Error(ErrorCode::kInvalidArgument, "target rate must be positive");
  const int source_hz = w.sample_rate_hz();
  if (target_hz == source_hz) return w;

  // Polyphase evaluation on the rational grid up/down.
  const int g = std::gcd(source_hz, target_hz);
  const long up = target_hz / g;
  const long down = source_hz / g;
  const double ratio = static_cast<double>(target_hz) / source_hz;

  // Kernel in units of input samples. Cutoff and transition are relative to
  // the lower Nyquist; the stopband begins exactly at that Nyquist.
  const double nyq = 0.5 * std::min(1.0, ratio);  // cycles / input sample
  const double transition = 0.1 * nyq;
  const double cutoff = nyq - 0.5 * transition;
  const double atten_db = 80.0;
  const double beta = 0.1102 * (atten_db - 8.7);
  const double dw = 2.0 * M_PI * transition;
  const int half_taps =
      static_cast<int>(std::ceil((atten_db - 8.0) / (2.285 * dw) / 2.0)) + 1;
  const double i0_beta = std::cyl_bessel_i(0.0, beta);

  auto kernel = [&](double t) {
    if (std::abs(t) >= half_taps) return 0.0;
    double r = t / half_taps;
    double win = std::cyl_bessel_i(0.0, beta * std::sqrt(1.0 - r * r)) / i0_beta;
    double arg = 2.0 * cutoff * t;
    double sinc = arg == 0.0 ? 1.0 : std::sin(M_PI * arg) / (M_PI * arg);
    return 2.0 * cutoff * sinc * win;
  };

  // Output sample m sits at input position m*down/up = base + phase/up.
  std::vector<std::vector<double>> table(static_cast<std::size_t>(up));
  for (long phase = 0; phase < up; ++phase) {
    double frac = static_cast<double>(phase) / up;
    auto &taps = table[static_cast<std::size_t>(phase)];
    taps.resize(2 * static_cast<std::size_t>(half_taps) + 1);
    for (int k = -half_taps; k <= half_taps; ++k)
      taps[static_cast<std::size_t>(k + half_taps)] = kernel(frac - k);
  }

  const auto in = w.samples();
  const long n_in = static_cast<long>(in.size());
  const std::size_t n_out = static_cast<std::size_t>(
      std::max(1.0, std::round(static_cast<double>(in.size()) * ratio)));
  std::vector<double> out(n_out);
  for (std::size_t m = 0; m < n_out; ++m) {
    long num = static_cast<long>(m) * down;
    long base = num / up;
    long phase = num % up;
    const auto &taps = table[static_cast<std::size_t>(phase)];
    double acc = 0.0;
    long lo = std::max(-static_cast<long>(half_taps), -base);
    long hi = std::min(static_cast<long>(half_taps), n_in - 1 - base);
    for (long k = lo; k <= hi; ++k)
      acc += taps[static_cast<std::size_t>(k + half_taps)] *
             in[static_cast<std::size_t>(base + k)];
    out[m] = acc;
  }
  return Waveform(std::move(out), target_hz);
}

Waveform FixLength(const Waveform &w, std::size_t n_samples) {
  if (n_samples == 0)
    throw Error(ErrorCode::kInvalidArgument, "fix_length needs n_samples > 0");
  const auto in = w.samples();
  if (in.size() == n_samples) return w;
  std::vector<double> out(n_samples, 0.0);
  if (in.size() > n_samples) {
    std::size_t start = (in.size() - n_samples) / 2;
    std::copy_n(in.begin() + static_cast<std::ptrdiff_t>(start), n_samples,
                out.begin());
  } else {
    std::size_t left = (n_samples - in.size()) / 2;
    std::copy(in.begin(), in.end(), out.begin() + static_cast<std::ptrdiff_t>(left));
  }
  return Waveform(std::move(out), w.sample_rate_hz());
}

}  // namespace scatser
