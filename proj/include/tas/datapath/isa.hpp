#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tas/core/geometry.hpp"

namespace tas {

// Orientation frame of a tape: u = lane direction (left boundary to right),
// v = advance direction, n = u x v (the tape's "up"). 24 right-handed
// frames.
struct Frame {
  Dir u = Dir::E;
  Dir v = Dir::N;

  Dir n() const { return cross(u, v); }

  static Dir cross(Dir a, Dir b);

  Frame turned_right() const { return Frame{flip(v), u}; }
  Frame turned_left() const { return Frame{v, flip(u)}; }
  Frame risen() const { return Frame{u, n()}; }
  Frame fallen() const { return Frame{u, flip(n())}; }

  static Dir flip(Dir d) { return opposite(d); }

  friend bool operator==(const Frame& a, const Frame& b) {
    return a.u == b.u && a.v == b.v;
  }
  friend bool operator<(const Frame& a, const Frame& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  }

  std::string code() const {
    return std::string(dir_name(u)) + dir_name(v);
  }
  static std::vector<Frame> all();
};

inline Dir Frame::cross(Dir a, Dir b) {
  auto vec = [](Dir d) { return dir_step(d); };
  Coord A = vec(a), B = vec(b);
  Coord C{A.y * B.z - A.z * B.y, A.z * B.x - A.x * B.z,
          A.x * B.y - A.y * B.x};
  for (Dir d : kAllDirs) {
    if (dir_step(d) == C) return d;
  }
  throw std::logic_error("degenerate frame");
}

inline std::vector<Frame> Frame::all() {
  std::vector<Frame> out;
  for (Dir u : kAllDirs) {
    for (Dir v : kAllDirs) {
      Coord a = dir_step(u), b = dir_step(v);
      int64_t dot = a.x * b.x + a.y * b.y + a.z * b.z;
      if (dot == 0) out.push_back(Frame{u, v});
    }
  }
  return out;
}

// Instruction set of the construction's datapaths.
enum class Op {
  Buffer,
  Forward,  // operand c >= 1: advances 2c+1 rows
  Left,
  Right,
  Rise,
  Fall,
  Place,  // operand: pair id from the fixed catalog
  Variable,
  Stop,
};

struct Instruction {
  Op op = Op::Buffer;
  int operand = 0;  // Forward: count; Place: pair id; Variable: payload width

  static Instruction buffer() { return {Op::Buffer, 0}; }
  static Instruction forward(int c) { return {Op::Forward, c}; }
  static Instruction left() { return {Op::Left, 0}; }
  static Instruction right() { return {Op::Right, 0}; }
  static Instruction rise() { return {Op::Rise, 0}; }
  static Instruction fall() { return {Op::Fall, 0}; }
  static Instruction place(int pair_id) { return {Op::Place, pair_id}; }
  static Instruction variable(int width) { return {Op::Variable, width}; }
  static Instruction stop() { return {Op::Stop, 0}; }
};

enum class BoundaryKind {
  Plain,
  RightCallback,
  LeftCallback,
  RightVariableCallback,
};

struct DatapathProgram {
  std::vector<Instruction> instructions;
  std::vector<int> payload;       // payload bits appended after instructions
  int forward_operand_bits = 0;   // fixed operand width; 0 = derive minimal
  BoundaryKind boundary = BoundaryKind::Plain;
};

// Head pose of a (possibly finished) datapath: the cell where the next
// row's leader would attach, plus the current frame.
struct Pose {
  Coord at{0, 0, 0};
  Frame frame{};
  bool halted = false;    // stop executed (or instructions exhausted)
  bool stalled = false;   // waiting at a variable instruction
};

struct ProgramShape {
  int width = 0;               // lanes including both boundaries
  int operand_bits = 0;        // forward operand field width
  std::vector<int> lane_syms;  // symbol codes per lane (see tape.hpp)
};

struct PoseTrace {
  Pose pose;
  int64_t expected_tiles = 0;     // tape cells incl. seed row; excludes
                                  // callback chains and injection rails
  std::vector<Coord> pair_cells;  // place-instruction pair positions
};

// Abstract executor: computes the exact pose the grown tape reaches,
// including the lateral and forward displacement of turn squares. This is
// the test oracle for grown datapaths.
class PoseInterpreter {
 public:
  // lane-0 cell of the seed row at `origin`, frame `f`
  static Pose run(const DatapathProgram& program, const Coord& origin,
                  const Frame& f);
  static PoseTrace trace(const DatapathProgram& program, const Coord& origin,
                         const Frame& f, bool assume_resumed = false);
};

int minimal_operand_bits(const DatapathProgram& program);
int program_width(const DatapathProgram& program);

}  // namespace tas
