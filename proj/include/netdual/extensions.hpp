#pragma once

#include <string>

#include "netdual/setfunction.hpp"

namespace netdual {

/// Adds Y = J_A, a pseudo-variable that is a function of A and determines it:
/// g(Y u B) = f(B u A). Y is appended as the last ground element.
SetFunction functional_extension(const SetFunction& f, Subset a, const std::string& name);

/// Adds Z = X + Y for single elements X, Y with f(X) = f(Y) and f(XY) = f(X) + f(Y).
/// g(Z u B) = min(f(B u X u Y), f(B) + f(X)), so any two of X, Y, Z determine the third.
SetFunction sum_extension(const SetFunction& f, int x, int y, const std::string& name);

/// Adds Z = J_{X|Y}: a function of X of entropy f(XY) - f(Y) that, with Y, determines X.
/// g(Z u B) = min(f(B u X), f(B) + f(XY) - f(Y)).
SetFunction sw_extension(const SetFunction& f, Subset x, Subset y, const std::string& name);

/// Joins two functions on disjoint grounds as independent: g(A) = f(A n L) + fstar(A n L*).
SetFunction independent_adhesion(const SetFunction& f, const SetFunction& fstar);

}  // namespace netdual
