// Generated-data accessors; definitions are produced by CMake from data/.
#ifndef VSMALIGN_SRC_EMBEDDED_DATA_H_
#define VSMALIGN_SRC_EMBEDDED_DATA_H_

namespace vsmalign::internal {

extern const char kEmbeddedInstrument[];
extern const char kEmbeddedReferences[];

}  // namespace vsmalign::internal

#endif  // VSMALIGN_SRC_EMBEDDED_DATA_H_
