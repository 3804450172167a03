#include "loccov/loccov.h"
int main(){ return 0; }
