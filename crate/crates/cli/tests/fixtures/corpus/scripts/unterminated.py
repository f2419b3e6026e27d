def main():
    message = "this string never ends
    return message
