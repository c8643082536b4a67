#pragma once

namespace cutjoin {

inline constexpr const char* kVersion = "0.1.0";

// Bumped whenever the cache entry layout or value semantics change; a file
// with any other version is discarded and rebuilt, never reused silently.
inline constexpr int kCacheVersion = 1;

}  // namespace cutjoin
