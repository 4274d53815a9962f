// Builds the amalgamated Catch2 implementation once as a static library.
#include <catch2/catch_amalgamated.cpp>
