"""Edge variables, graph factors, trace statistics and closed-walk types."""
