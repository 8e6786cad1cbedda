"""
One module per omit command; cli.commands.common holds the plumbing they share.
"""
