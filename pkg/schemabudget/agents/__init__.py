"""Agent loop: context assembly, model clients and the episode harness."""
