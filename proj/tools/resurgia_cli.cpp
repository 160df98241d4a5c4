#include <cstdio>
int main() { std::puts("resurgia cli placeholder"); }
