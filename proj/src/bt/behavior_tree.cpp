#include "skilltune/bt/behavior_tree.hpp"

#include <map>
#include <set>
#include <sstream>

namespace skilltune::bt {

std::string to_string(Status s)
{
    switch (s) {
    case Status::success: return "success";
    case Status::failure: return "failure";
    case Status::running: return "running";
    }
    return "?";
}

std::string to_string(NodeKind k)
{
    switch (k) {
    case NodeKind::sequence: return "sequence";
    case NodeKind::sequence_star: return "sequence-star";
    case NodeKind::selector: return "selector";
    case NodeKind::parallel: return "parallel";
    case NodeKind::parallel_first_success: return "parallel-first-success";
    case NodeKind::decorator: return "decorator";
    case NodeKind::action: return "action";
    case NodeKind::condition: return "condition";
    }
    return "?";
}

namespace {

bool is_control(NodeKind k)
{
    return k != NodeKind::action && k != NodeKind::condition;
}

std::vector<NodePtr> checked(std::vector<NodePtr> children, const std::string& name)
{
    if (children.empty()) throw TreeError("control node '" + name + "' has no children");
    for (const auto& c : children) {
        if (!c) throw TreeError("control node '" + name + "' has a null child");
    }
    return children;
}

} // namespace

Node::Node(NodeKind kind, std::string name) : kind_(kind), name_(std::move(name)) {}

Status Node::tick(Blackboard& bb)
{
    const Status s = on_tick(bb);
    last_ = s;
    return s;
}

void Node::halt()
{
    if (last_ != Status::running) return;
    on_halt();
    halt_children_from(0);
    last_.reset();
}

void Node::halt_children_from(std::size_t first)
{
    for (std::size_t i = first; i < children_.size(); ++i) children_[i]->halt();
}

Sequence::Sequence(std::string name, std::vector<NodePtr> children) : Node(NodeKind::sequence, std::move(name))
{
    children_ = checked(std::move(children), this->name());
}

Status Sequence::on_tick(Blackboard& bb)
{
    for (std::size_t i = 0; i < children_.size(); ++i) {
        const Status s = children_[i]->tick(bb);
        if (s != Status::success) {
            halt_children_from(i + 1);
            return s;
        }
    }
    return Status::success;
}

SequenceStar::SequenceStar(std::string name, std::vector<NodePtr> children)
    : Node(NodeKind::sequence_star, std::move(name))
{
    children_ = checked(std::move(children), this->name());
}

Status SequenceStar::on_tick(Blackboard& bb)
{
    while (current_ < children_.size()) {
        const Status s = children_[current_]->tick(bb);
        if (s == Status::running) return s;
        if (s == Status::failure) {
            current_ = 0;
            return s;
        }
        ++current_;
    }
    current_ = 0;
    return Status::success;
}

void SequenceStar::on_halt()
{
    current_ = 0;
}

Selector::Selector(std::string name, std::vector<NodePtr> children) : Node(NodeKind::selector, std::move(name))
{
    children_ = checked(std::move(children), this->name());
}

Status Selector::on_tick(Blackboard& bb)
{
    for (std::size_t i = 0; i < children_.size(); ++i) {
        const Status s = children_[i]->tick(bb);
        if (s != Status::failure) {
            halt_children_from(i + 1);
            return s;
        }
    }
    return Status::failure;
}

Parallel::Parallel(std::string name, std::vector<NodePtr> children) : Node(NodeKind::parallel, std::move(name))
{
    children_ = checked(std::move(children), this->name());
    done_.assign(children_.size(), false);
}

Status Parallel::on_tick(Blackboard& bb)
{
    bool failed = false;
    bool all_done = true;
    for (std::size_t i = 0; i < children_.size(); ++i) {
        if (done_[i]) continue;
        const Status s = children_[i]->tick(bb);
        if (s == Status::success) {
            done_[i] = true;
        } else {
            all_done = false;
            if (s == Status::failure) failed = true;
        }
    }
    if (failed) {
        halt_children_from(0);
        done_.assign(children_.size(), false);
        return Status::failure;
    }
    if (all_done) {
        done_.assign(children_.size(), false);
        return Status::success;
    }
    return Status::running;
}

void Parallel::on_halt()
{
    done_.assign(children_.size(), false);
}

ParallelFirstSuccess::ParallelFirstSuccess(std::string name, std::vector<NodePtr> children)
    : Node(NodeKind::parallel_first_success, std::move(name))
{
    children_ = checked(std::move(children), this->name());
}

Status ParallelFirstSuccess::on_tick(Blackboard& bb)
{
    bool succeeded = false;
    bool failed = false;
    for (auto& c : children_) {
        const Status s = c->tick(bb);
        if (s == Status::success) succeeded = true;
        if (s == Status::failure) failed = true;
    }
    if (succeeded || failed) {
        halt_children_from(0);
        return succeeded ? Status::success : Status::failure;
    }
    return Status::running;
}

Decorator::Decorator(std::string name, DecoratorKind mode, NodePtr child)
    : Node(NodeKind::decorator, std::move(name)), mode_(mode)
{
    std::vector<NodePtr> v;
    v.push_back(std::move(child));
    children_ = checked(std::move(v), this->name());
}

Status Decorator::on_tick(Blackboard& bb)
{
    const Status s = children_.front()->tick(bb);
    if (s == Status::running) return s;
    switch (mode_) {
    case DecoratorKind::inverter: return s == Status::success ? Status::failure : Status::success;
    case DecoratorKind::force_success: return Status::success;
    case DecoratorKind::force_failure: return Status::failure;
    }
    return s;
}

ActionLeaf::ActionLeaf(std::string name, TickFn tick, HaltFn halt)
    : Node(NodeKind::action, std::move(name)), tick_(std::move(tick)), halt_(std::move(halt))
{
}

Status ActionLeaf::on_tick(Blackboard& bb)
{
    return tick_ ? tick_(bb) : Status::success;
}

void ActionLeaf::on_halt()
{
    if (halt_) halt_();
}

ConditionLeaf::ConditionLeaf(std::string name, Predicate predicate)
    : Node(NodeKind::condition, std::move(name)), predicate_(std::move(predicate))
{
    if (!predicate_) throw TreeError("condition '" + this->name() + "' has no predicate");
}

Status ConditionLeaf::on_tick(Blackboard& bb)
{
    return predicate_(bb) ? Status::success : Status::failure;
}

NodePtr constant(Status s, std::string name)
{
    if (name.empty()) name = "always-" + to_string(s);
    return std::make_unique<ActionLeaf>(std::move(name), [s](Blackboard&) { return s; });
}

NodePtr build_tree(const std::vector<NodeSpec>& nodes, const std::string& root, const LeafFactory& leaves)
{
    std::map<std::string, const NodeSpec*> by_id;
    for (const auto& n : nodes) {
        if (!by_id.emplace(n.id, &n).second) throw TreeError("duplicate node id '" + n.id + "'");
    }
    if (!by_id.count(root)) throw TreeError("unknown root '" + root + "'");
    std::map<std::string, std::string> parent;
    for (const auto& n : nodes) {
        if (!is_control(n.kind) && !n.children.empty()) {
            throw TreeError("leaf '" + n.id + "' has children");
        }
        if (is_control(n.kind) && n.children.empty()) {
            throw TreeError("control node '" + n.id + "' has no children");
        }
        if (n.kind == NodeKind::decorator && n.children.size() != 1) {
            throw TreeError("decorator '" + n.id + "' must have exactly one child");
        }
        for (const auto& c : n.children) {
            if (!by_id.count(c)) throw TreeError("node '" + n.id + "' references unknown child '" + c + "'");
            if (c == root) throw TreeError("cycle through root '" + root + "'");
            if (!parent.emplace(c, n.id).second) throw TreeError("node '" + c + "' has more than one parent");
        }
    }

    std::set<std::string> visiting;
    std::set<std::string> seen;
    std::function<NodePtr(const std::string&)> make = [&](const std::string& id) -> NodePtr {
        if (!visiting.insert(id).second) throw TreeError("cycle detected at '" + id + "'");
        seen.insert(id);
        const NodeSpec& spec = *by_id.at(id);
        NodePtr out;
        if (!is_control(spec.kind)) {
            out = leaves(spec);
            if (!out) throw TreeError("no leaf behaviour for '" + id + "'");
        } else {
            std::vector<NodePtr> kids;
            for (const auto& c : spec.children) kids.push_back(make(c));
            switch (spec.kind) {
            case NodeKind::sequence: out = std::make_unique<Sequence>(id, std::move(kids)); break;
            case NodeKind::sequence_star: out = std::make_unique<SequenceStar>(id, std::move(kids)); break;
            case NodeKind::selector: out = std::make_unique<Selector>(id, std::move(kids)); break;
            case NodeKind::parallel: out = std::make_unique<Parallel>(id, std::move(kids)); break;
            case NodeKind::parallel_first_success:
                out = std::make_unique<ParallelFirstSuccess>(id, std::move(kids));
                break;
            case NodeKind::decorator:
                out = std::make_unique<Decorator>(id, spec.decorator, std::move(kids.front()));
                break;
            default: break;
            }
        }
        visiting.erase(id);
        return out;
    };
    NodePtr tree = make(root);
    if (seen.size() != nodes.size()) throw TreeError("graph has nodes unreachable from the root");
    return tree;
}

namespace {

void dump_into(const Node& n, int depth, std::ostringstream& out)
{
    out << std::string(static_cast<std::size_t>(depth) * 2, ' ') << to_string(n.kind()) << ' ' << n.name() << '\n';
    for (const auto& c : n.children()) dump_into(*c, depth + 1, out);
}

} // namespace

std::string dump(const Node& root)
{
    std::ostringstream out;
    dump_into(root, 0, out);
    return out.str();
}

} // namespace skilltune::bt
