#include "tsclust/tsclust.hpp"
int main() { return 0; }
