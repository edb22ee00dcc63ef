#ifndef GEOCUT_KDTREE_HPP_
#define GEOCUT_KDTREE_HPP_

#include <algorithm>
#include <utility>
#include <vector>

#include "geocut/types.hpp"

namespace geocut {

// Exact kd-tree over the rows of a point matrix. Neighbor candidates are
// ordered by (squared distance, index), so distance ties resolve to the
// smaller index; results agree exactly with a brute-force scan using
// squared_distance(). The matrix must outlive the tree.
class KdTree {
 public:
  explicit KdTree(const Matrix& points, int leaf_size = 16)
      : points_(&points),
        dim_(static_cast<int>(points.cols())),
        leaf_size_(std::max(leaf_size, 1)) {
    const int n = static_cast<int>(points.rows());
    order_.resize(n);
    for (int i = 0; i < n; ++i) order_[i] = i;
    if (n > 0) build(0, n);
  }

  // k nearest neighbors of q (excluding `exclude`, pass -1 for none),
  // ascending by (squared distance, index)
  void knn(const double* q, int k, int exclude,
           std::vector<std::pair<double, int>>& out) const {
    out.clear();
    if (k <= 0 || nodes_.empty()) return;
    knn_walk(0, q, k, exclude, out);
    std::sort(out.begin(), out.end());
  }

  // all indices within distance radius (inclusive), ascending by index
  void radius(const double* q, double radius, int exclude,
              std::vector<int>& out) const {
    out.clear();
    if (nodes_.empty()) return;
    radius_walk(0, q, radius * radius, exclude, out);
    std::sort(out.begin(), out.end());
  }

  int nearest(const double* q, int exclude) const {
    std::vector<std::pair<double, int>> out;
    knn(q, 1, exclude, out);
    return out.empty() ? -1 : out[0].second;
  }

 private:
  struct Node {
    int begin = 0, end = 0;   // range into order_ (leaves only)
    int left = -1, right = -1;
    std::vector<double> box_lo, box_hi;
  };

  const double* row(int i) const { return row_buffer_[i].data(); }

  int build(int begin, int end) {
    Node node;
    node.box_lo.assign(dim_, std::numeric_limits<double>::infinity());
    node.box_hi.assign(dim_, -std::numeric_limits<double>::infinity());
    for (int t = begin; t < end; ++t) {
      cache_row(order_[t]);
      for (int c = 0; c < dim_; ++c) {
        const double v = (*points_)(order_[t], c);
        node.box_lo[c] = std::min(node.box_lo[c], v);
        node.box_hi[c] = std::max(node.box_hi[c], v);
      }
    }
    const int id = static_cast<int>(nodes_.size());
    nodes_.push_back(node);
    if (end - begin <= leaf_size_) {
      nodes_[id].begin = begin;
      nodes_[id].end = end;
      return id;
    }
    // split the widest dimension at the median; total order by (coord, index)
    int split_dim = 0;
    double widest = -1.0;
    for (int c = 0; c < dim_; ++c) {
      const double w = node.box_hi[c] - node.box_lo[c];
      if (w > widest) {
        widest = w;
        split_dim = c;
      }
    }
    const int mid = begin + (end - begin) / 2;
    std::nth_element(order_.begin() + begin, order_.begin() + mid,
                     order_.begin() + end, [&](int a, int b) {
                       const double va = (*points_)(a, split_dim);
                       const double vb = (*points_)(b, split_dim);
                       return va < vb || (va == vb && a < b);
                     });
    const int left = build(begin, mid);
    const int right = build(mid, end);
    nodes_[id].left = left;
    nodes_[id].right = right;
    return id;
  }

  void cache_row(int i) {
    if (row_buffer_.size() <= static_cast<size_t>(i))
      row_buffer_.resize(points_->rows());
    if (row_buffer_[i].empty()) {
      row_buffer_[i].resize(dim_);
      for (int c = 0; c < dim_; ++c) row_buffer_[i][c] = (*points_)(i, c);
    }
  }

  double box_sq_dist(const Node& node, const double* q) const {
    double s = 0.0;
    for (int c = 0; c < dim_; ++c) {
      double t = 0.0;
      if (q[c] < node.box_lo[c]) t = node.box_lo[c] - q[c];
      else if (q[c] > node.box_hi[c]) t = q[c] - node.box_hi[c];
      s += t * t;
    }
    return s;
  }

  void knn_walk(int id, const double* q, int k, int exclude,
                std::vector<std::pair<double, int>>& heap) const {
    const Node& node = nodes_[id];
    if (static_cast<int>(heap.size()) == k &&
        box_sq_dist(node, q) > heap.front().first)
      return;
    if (node.left < 0) {
      for (int t = node.begin; t < node.end; ++t) {
        const int i = order_[t];
        if (i == exclude) continue;
        const double d2 = squared_distance(q, row(i), dim_);
        const std::pair<double, int> cand{d2, i};
        if (static_cast<int>(heap.size()) < k) {
          heap.push_back(cand);
          std::push_heap(heap.begin(), heap.end());
        } else if (cand < heap.front()) {
          std::pop_heap(heap.begin(), heap.end());
          heap.back() = cand;
          std::push_heap(heap.begin(), heap.end());
        }
      }
      return;
    }
    const double dl = box_sq_dist(nodes_[node.left], q);
    const double dr = box_sq_dist(nodes_[node.right], q);
    if (dl <= dr) {
      knn_walk(node.left, q, k, exclude, heap);
      knn_walk(node.right, q, k, exclude, heap);
    } else {
      knn_walk(node.right, q, k, exclude, heap);
      knn_walk(node.left, q, k, exclude, heap);
    }
  }

  void radius_walk(int id, const double* q, double r2, int exclude,
                   std::vector<int>& out) const {
    const Node& node = nodes_[id];
    if (box_sq_dist(node, q) > r2) return;
    if (node.left < 0) {
      for (int t = node.begin; t < node.end; ++t) {
        const int i = order_[t];
        if (i == exclude) continue;
        if (squared_distance(q, row(i), dim_) <= r2) out.push_back(i);
      }
      return;
    }
    radius_walk(node.left, q, r2, exclude, out);
    radius_walk(node.right, q, r2, exclude, out);
  }

  const Matrix* points_;
  int dim_;
  int leaf_size_;
  std::vector<int> order_;
  std::vector<Node> nodes_;
  std::vector<std::vector<double>> row_buffer_;
};

}  // namespace geocut

#endif  // GEOCUT_KDTREE_HPP_
