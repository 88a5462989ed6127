#include <orbicurve/cli.hpp>

int main(int argc, char** argv) { return orbicurve::cli_main(argc, argv); }
