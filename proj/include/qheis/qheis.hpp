#pragma once

#include "qheis/quaternion.hpp"
#include "qheis/group.hpp"
#include "qheis/grid.hpp"
#include "qheis/field.hpp"
#include "qheis/dft.hpp"
#include "qheis/fourier.hpp"
#include "qheis/testfun.hpp"
#include "qheis/fock.hpp"
#include "qheis/gft.hpp"
#include "qheis/radon.hpp"
#include "qheis/wavelet.hpp"
#include "qheis/report.hpp"
#include "qheis/selftest.hpp"
