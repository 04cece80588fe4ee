#include "heleshaw/verification.hpp"
int main() { return 0; }
