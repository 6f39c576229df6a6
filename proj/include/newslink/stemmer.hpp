#pragma once

#include <string>

namespace newslink {

// Porter suffix-stripping stemmer, following the widely distributed
// reference implementation: words of length <= 2 are left alone, step 2
// uses the bli->ble and logi->log rules. Input is expected lowercased;
// tokens containing non-letters are returned unchanged.
std::string porter_stem(const std::string& word);

}  // namespace newslink
