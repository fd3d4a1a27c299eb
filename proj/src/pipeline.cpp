namespace scut {
// in progress
}
