"""Grow the genus tree from the root and show one parent/child round trip.

Run from the repository root: python3 demos/02_genus_tree.py
"""
from gsf.core import format_points
from gsf.enumeration import expand, root_frontier
from gsf.tracks import favored_tracks, format_track, remove_track, special_parents


def main() -> None:
    frontier = root_frontier()
    print("frontier growth:")
    for _ in range(4):
        print(f"  genus {frontier.genus}: {len(frontier)} semigroups")
        frontier = expand(frontier)
    print(f"  genus {frontier.genus}: {len(frontier)} semigroups")

    print()
    root = root_frontier().members[0]
    print("root small set:", format_points(root.small))
    for track in favored_tracks(root):
        child = remove_track(root, track)
        print(f"  removing {format_track(track)} gives {format_points(child.small)}")

    print()
    child = remove_track(root, favored_tracks(root)[0])
    print("parents of", format_points(child.small), "recovered from its frobenius corner:")
    for parent, track in special_parents(child):
        print(f"  {format_points(parent.small)} via {format_track(track)}")
        back = remove_track(parent, track)
        assert back == child
    print("every parent/track pair removes back to the child")


if __name__ == "__main__":
    main()
