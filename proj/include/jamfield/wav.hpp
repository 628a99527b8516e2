#pragma once

#include <string>

#include "jamfield/signal.hpp"

namespace jamfield {

enum class WavEncoding { pcm16, float32 };

std::string wav_bytes(const SampledSignal& s, WavEncoding enc);
void write_wav(const std::string& path, const SampledSignal& s,
               WavEncoding enc = WavEncoding::float32);
SampledSignal read_wav(const std::string& path);  // mono pcm16/float32

}  // namespace jamfield
