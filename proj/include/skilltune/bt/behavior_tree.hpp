#ifndef SKILLTUNE_BT_BEHAVIOR_TREE_HPP
#define SKILLTUNE_BT_BEHAVIOR_TREE_HPP

#include <any>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "skilltune/common/error.hpp"

namespace skilltune::bt {

enum class Status { success, failure, running };

std::string to_string(Status s);

class TreeError : public Error {
public:
    using Error::Error;
};

/// Shared key/value store between the episode loop and the leaves.
class Blackboard {
public:
    template <class T>
    void set(const std::string& key, T value)
    {
        entries_[key] = std::move(value);
    }

    template <class T>
    T* find(const std::string& key)
    {
        auto it = entries_.find(key);
        return it == entries_.end() ? nullptr : std::any_cast<T>(&it->second);
    }

    template <class T>
    const T* find(const std::string& key) const
    {
        auto it = entries_.find(key);
        return it == entries_.end() ? nullptr : std::any_cast<T>(&it->second);
    }

    template <class T>
    T& get(const std::string& key)
    {
        T* p = find<T>(key);
        if (!p) throw TreeError("blackboard has no entry '" + key + "' of the requested type");
        return *p;
    }

    template <class T>
    const T& get(const std::string& key) const
    {
        const T* p = find<T>(key);
        if (!p) throw TreeError("blackboard has no entry '" + key + "' of the requested type");
        return *p;
    }

    bool contains(const std::string& key) const { return entries_.count(key) != 0; }
    void erase(const std::string& key) { entries_.erase(key); }

private:
    std::unordered_map<std::string, std::any> entries_;
};

enum class NodeKind {
    sequence,
    sequence_star,
    selector,
    parallel,
    parallel_first_success,
    decorator,
    action,
    condition,
};

std::string to_string(NodeKind k);

class Node {
public:
    Node(NodeKind kind, std::string name);
    virtual ~Node() = default;
    Node(const Node&) = delete;
    Node& operator=(const Node&) = delete;

    Status tick(Blackboard& bb);
    /// Preempts the node. Only a running node is notified.
    void halt();

    NodeKind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    bool is_running() const { return last_ == Status::running; }
    std::optional<Status> last_status() const { return last_; }
    const std::vector<std::unique_ptr<Node>>& children() const { return children_; }

protected:
    virtual Status on_tick(Blackboard& bb) = 0;
    virtual void on_halt() {}
    void halt_children_from(std::size_t first);

    std::vector<std::unique_ptr<Node>> children_;

private:
    NodeKind kind_;
    std::string name_;
    std::optional<Status> last_;
};

using NodePtr = std::unique_ptr<Node>;

/// Reactive AND: re-ticks from the first child every tick.
class Sequence : public Node {
public:
    Sequence(std::string name, std::vector<NodePtr> children);

protected:
    Status on_tick(Blackboard& bb) override;
};

/// AND with memory: resumes at the first child that has not yet succeeded.
class SequenceStar : public Node {
public:
    SequenceStar(std::string name, std::vector<NodePtr> children);

protected:
    Status on_tick(Blackboard& bb) override;
    void on_halt() override;

private:
    std::size_t current_ = 0;
};

/// OR: stops at the first child that does not fail.
class Selector : public Node {
public:
    Selector(std::string name, std::vector<NodePtr> children);

protected:
    Status on_tick(Blackboard& bb) override;
};

/// Ticks every child that has not succeeded yet. Fails if one fails, succeeds
/// once all have succeeded.
class Parallel : public Node {
public:
    Parallel(std::string name, std::vector<NodePtr> children);

protected:
    Status on_tick(Blackboard& bb) override;
    void on_halt() override;

private:
    std::vector<bool> done_;
};

/// Ticks all children; succeeds when one succeeds and halts the others.
/// A failing child (with no success in the same tick) fails the node.
class ParallelFirstSuccess : public Node {
public:
    ParallelFirstSuccess(std::string name, std::vector<NodePtr> children);

protected:
    Status on_tick(Blackboard& bb) override;
};

enum class DecoratorKind { inverter, force_success, force_failure };

class Decorator : public Node {
public:
    Decorator(std::string name, DecoratorKind mode, NodePtr child);
    DecoratorKind mode() const { return mode_; }

protected:
    Status on_tick(Blackboard& bb) override;

private:
    DecoratorKind mode_;
};

/// Leaf with behaviour. Subclass or supply callbacks.
class ActionLeaf : public Node {
public:
    using TickFn = std::function<Status(Blackboard&)>;
    using HaltFn = std::function<void()>;

    explicit ActionLeaf(std::string name, TickFn tick = {}, HaltFn halt = {});

protected:
    Status on_tick(Blackboard& bb) override;
    void on_halt() override;

private:
    TickFn tick_;
    HaltFn halt_;
};

class ConditionLeaf : public Node {
public:
    using Predicate = std::function<bool(const Blackboard&)>;
    ConditionLeaf(std::string name, Predicate predicate);

protected:
    Status on_tick(Blackboard& bb) override;

private:
    Predicate predicate_;
};

/// Leaf that always returns a fixed status.
NodePtr constant(Status s, std::string name = {});

/// Graph description for building trees from edge lists.
struct NodeSpec {
    std::string id;
    NodeKind kind = NodeKind::action;
    std::vector<std::string> children;
    DecoratorKind decorator = DecoratorKind::inverter;
};

using LeafFactory = std::function<NodePtr(const NodeSpec&)>;

/// Rejects cycles, nodes with several parents, unknown ids, disconnected
/// nodes, empty control nodes, and leaves with children.
NodePtr build_tree(const std::vector<NodeSpec>& nodes, const std::string& root, const LeafFactory& leaves);

/// Indented text dump, one node per line.
std::string dump(const Node& root);

} // namespace skilltune::bt

#endif
