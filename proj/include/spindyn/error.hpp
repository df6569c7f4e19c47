#pragma once

#include <stdexcept>
#include <string>

namespace spindyn {

//! Base class of every exception thrown by the library.
class error : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

//! A 2x2 matrix expected to be Hermitian is not.
class non_hermitian : public error {
public:
	using error::error;
};

//! A field spinor produced a non-real vector map.
class non_real : public error {
public:
	using error::error;
};

//! The spinor pair has (numerically) zero mass; tetrad and rest frame are undefined.
class massless_state : public error {
public:
	using error::error;
};

//! A rest-frame operation was given a state with nonzero spatial momentum.
class not_at_rest : public error {
public:
	using error::error;
};

//! A momentum that must be timelike and future pointing is not.
class not_timelike : public error {
public:
	using error::error;
};

//! A precession fit had no rotating transverse component to fit.
class degenerate_fit : public error {
public:
	using error::error;
};

} // namespace spindyn
