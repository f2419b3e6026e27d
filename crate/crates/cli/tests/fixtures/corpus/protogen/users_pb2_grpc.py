import grpc


class UsersServicer(object):
    """Missing associated documentation comment in .proto file"""

    def CreateUser(self, request, context):
        """Missing associated documentation comment in .proto file"""
        context.set_code(grpc.StatusCode.UNIMPLEMENTED)
        raise NotImplementedError('Missing associated documentation comment in .proto file')

    def GetUser(self, request, context):
        """Missing associated documentation comment in .proto file"""
        context.set_code(grpc.StatusCode.UNIMPLEMENTED)
        raise NotImplementedError('Missing associated documentation comment in .proto file')


class UsersStub(object):

    def __init__(self, channel):
        """Constructor.

        Args:
            channel: A grpc.Channel.
        """
        self.channel = channel
