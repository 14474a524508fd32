#include "uavsec/experiments.hpp"

int main(int argc, char** argv) { return uavsec::cli_main(argc, argv); }
