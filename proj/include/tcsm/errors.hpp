#pragma once

#include <stdexcept>
#include <string>

namespace tcsm {

// Base class for every diagnostic this library throws. Subclasses exist so
// callers can map failure families to exit codes without string matching.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Signal/formula layer.
struct InvalidSignalName : Error { using Error::Error; };
struct AtomCapExceeded : Error { using Error::Error; };
struct OutSetNotInAlphabet : Error { using Error::Error; };

// Automaton layer.
struct UnknownState : Error { using Error::Error; };
struct OverlappingOutputs : Error { using Error::Error; };
struct OverlappingClocks : Error { using Error::Error; };
struct IncompleteModel : Error { using Error::Error; };

// Clock/region layer.
struct UnknownClock : Error { using Error::Error; };
struct NegativeDelta : Error { using Error::Error; };
struct ConstantExceedsBound : Error { using Error::Error; };
struct RegionBudgetExceeded : Error { using Error::Error; };

// Region automaton / verification layer.
struct UnknownRState : Error { using Error::Error; };
struct IncomparableAlphabets : Error { using Error::Error; };
struct UnknownErrorState : Error { using Error::Error; };
struct NonExternalSignal : Error { using Error::Error; };

// Model file layer. `line` is 1-based; 0 means "no position available".
struct ParseError : Error {
    int line;
    ParseError(int line_, const std::string& what_)
        : Error(what_), line(line_) {}
};

} // namespace tcsm
