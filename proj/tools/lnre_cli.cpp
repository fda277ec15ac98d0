#include <lnre/cli.hpp>

int main(int argc, char** argv) { return lnre::dispatch(argc, argv); }
