int read_count(void) {
  return 12;
}

int main(void) {
  int* slot = make_slot();
  int count = read_count();
  *slot = count;
  return 0;
}
