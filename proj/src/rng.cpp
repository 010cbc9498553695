#include "slc/rng.hpp"

// Header-only; this translation unit exists so the library target owns the
// component and any future out-of-line helpers have a home.
